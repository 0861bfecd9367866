#include "drkit/symbols.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace drkit {

namespace {

double f_of(const HTypeAlgebra<double>& alg, FSymbol which, double lambda, double m) {
  return f_symbol(alg, which, lambda, m, XiMethod::closed_form);
}

FSymbol f_for(MSymbol which) {
  switch (which) {
    case MSymbol::M0:
      return FSymbol::F0;
    case MSymbol::Mv:
      return FSymbol::Fv;
    case MSymbol::Mz:
      return FSymbol::Fz;
  }
  throw std::invalid_argument("unknown symbol");
}

double discrete_lp_norm(const Eigen::VectorXd& f, const std::vector<double>& cell, double p) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < f.size(); ++k) s += cell[k] * std::pow(std::abs(f(k)), p);
  return std::pow(s, 1.0 / p);
}

// Top right singular vector of D^{1/2} T D^{-1/2}, returned unscaled as a function on the grid.
Eigen::VectorXd top_input(const OperatorMatrix& T, const std::vector<double>& cell, int max_iter) {
  const Eigen::Index n = T.entries.cols();
  Eigen::VectorXd d(n);
  for (Eigen::Index k = 0; k < n; ++k) d(k) = std::sqrt(cell[k]);
  const Eigen::MatrixXd A = d.asDiagonal() * T.entries * d.cwiseInverse().asDiagonal();
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd x = A.transpose() * (A * v);
    const double s = x.norm();
    if (s == 0.0) break;
    v = x / s;
    if (std::abs(s - prev) <= 1e-10 * s) break;
    prev = s;
  }
  return d.cwiseInverse().asDiagonal() * v;
}

}  // namespace

double LogGrid::h() const { return 2.0 * U / (N - 1); }

double LogGrid::u(int k) const { return -U + k * h(); }

double LogGrid::trapezoid(int k) const { return (k == 0 || k == N - 1) ? 0.5 : 1.0; }

void LogGrid::validate() const {
  if (N < 2 || !(U > 0.0)) throw std::invalid_argument("log grid needs N >= 2 and U > 0");
}

A2Weight A2Weight::flat() { return {}; }

A2Weight A2Weight::power(double alpha) {
  if (!(std::abs(alpha) < 1.0)) throw std::invalid_argument("power weight needs |alpha| < 1");
  return {Kind::power, alpha};
}

double A2Weight::eval(double u) const { return kind == Kind::flat ? 1.0 : std::pow(std::abs(u), alpha); }

double A2Weight::average(double a, double b) const {
  if (!(b > a)) throw std::invalid_argument("average needs a < b");
  if (kind == Kind::flat) return 1.0;
  auto G = [&](double u) { return std::copysign(std::pow(std::abs(u), alpha + 1.0), u) / (alpha + 1.0); };
  return (G(b) - G(a)) / (b - a);
}

double A2Weight::characteristic_estimate() const {
  if (kind == Kind::flat) return 1.0;
  const A2Weight inv = power(-alpha);
  double best = 1.0;
  for (int j = -20; j <= 20; ++j) {
    const double r = std::ldexp(1.0, j);
    best = std::max(best, average(-r, r) * inv.average(-r, r));
    best = std::max(best, average(0.0, r) * inv.average(0.0, r));
    for (int i = -20; i <= 20; ++i) {
      const double c = std::ldexp(1.0, i);
      best = std::max(best, average(c, c + r) * inv.average(c, c + r));
    }
  }
  return best;
}

std::vector<double> symbol_samples(const HTypeAlgebra<double>& alg, MSymbol which, double lambda, double mu_abs,
                                   const LogGrid& grid) {
  grid.validate();
  if (!(lambda > 0.0) || !(mu_abs >= 0.0)) throw std::domain_error("symbols need lambda > 0 and |mu| >= 0");
  std::vector<double> F(grid.N);
  for (int k = 0; k < grid.N; ++k) {
    const double e = std::exp(grid.u(k));
    F[k] = f_of(alg, f_for(which), e * lambda, e * mu_abs);
  }
  return F;
}

OperatorMatrix build_m_operator(const HTypeAlgebra<double>& alg, MSymbol which, double lambda, double mu_abs,
                                const LogGrid& grid) {
  const std::vector<double> F = symbol_samples(alg, which, lambda, mu_abs, grid);
  const double h = grid.h();
  OperatorMatrix T{grid, Eigen::MatrixXd::Zero(grid.N, grid.N)};
  for (int k = 0; k < grid.N; ++k)
    for (int j = 0; j < grid.N; ++j) {
      const double d = (k - j) * h;
      const double w = h * grid.trapezoid(j);
      if (which == MSymbol::M0) {
        if (d < 1.0 - 1e-9 * h) continue;
        const double edge = std::abs(d - 1.0) <= 1e-9 * h ? 0.5 : 1.0;
        T.entries(k, j) = edge * w * (F[k] - F[j]) / d;
      } else {
        if (d > -1.0 + 1e-9 * h) continue;
        const double edge = std::abs(d + 1.0) <= 1e-9 * h ? 0.5 : 1.0;
        T.entries(k, j) = edge * w * F[j] / d;
      }
    }
  return T;
}

std::vector<double> cell_weights(const LogGrid& grid, const A2Weight& w) {
  grid.validate();
  const double h = grid.h();
  std::vector<double> out(grid.N);
  for (int k = 0; k < grid.N; ++k) {
    const double a = std::max(-grid.U, grid.u(k) - 0.5 * h), b = std::min(grid.U, grid.u(k) + 0.5 * h);
    out[k] = (b - a) * w.average(a, b);
  }
  return out;
}

OpNormResult op_norm(const OperatorMatrix& T, const A2Weight& w, double tol, int max_iter) {
  const Eigen::Index n = T.entries.rows();
  if (T.entries.cols() != n || n != T.grid.N) throw std::invalid_argument("operator does not match its grid");
  const std::vector<double> cell = cell_weights(T.grid, w);
  Eigen::VectorXd d(n);
  for (Eigen::Index k = 0; k < n; ++k) d(k) = std::sqrt(cell[k]);
  const Eigen::MatrixXd A = d.asDiagonal() * T.entries * d.cwiseInverse().asDiagonal();
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0).normalized();
  OpNormResult out;
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd x = A.transpose() * (A * v);
    const double s = x.norm();
    out.iterations = it;
    if (s == 0.0) {
      out.value = 0.0;
      out.converged = true;
      return out;
    }
    v = x / s;
    if (std::abs(s - prev) <= tol * s) {
      out.value = std::sqrt(s);
      out.converged = true;
      return out;
    }
    prev = s;
  }
  out.value = std::sqrt(prev);
  return out;
}

std::vector<ConePoint> cone_grid(double lam_min, double lam_max, int n_lam, int n_mu, double kappa) {
  if (!(lam_min > 0.0) || !(lam_max >= lam_min) || n_lam < 1 || n_mu < 1 || !(kappa > 0.0))
    throw std::invalid_argument("invalid cone grid");
  std::vector<ConePoint> g;
  for (int i = 0; i < n_lam; ++i) {
    const double lam = n_lam == 1 ? lam_min : lam_min * std::pow(lam_max / lam_min, double(i) / (n_lam - 1));
    for (int j = 0; j < n_mu; ++j) g.push_back({lam, n_mu == 1 ? 0.0 : lam / kappa * j / (n_mu - 1)});
  }
  return g;
}

double symbol_envelope(FSymbol which, int order, double lambda, double mu_abs, double c) {
  const double E = std::exp(-2.0 * c * std::sqrt(lambda + mu_abs));
  const double L = std::log(std::numbers::e + 1.0 / lambda);
  switch (which) {
    case FSymbol::Fv:
      return std::sqrt(lambda) * L * E;
    case FSymbol::Fz:
      return lambda * L * E;
    case FSymbol::F0:
      return order == 0 ? E : order == 1 ? lambda * L * E : lambda * E;
  }
  throw std::invalid_argument("unknown symbol");
}

double symbol_derivative(const HTypeAlgebra<double>& alg, FSymbol which, int order, double lambda, double mu_abs) {
  if (order < 0 || order > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
  const int d = 1 + alg.dim_z();
  const double h = 1e-3 * lambda;
  auto F = [&](const Eigen::VectorXd& off) {
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(alg.dim_z());
    mu(0) = mu_abs;
    mu += off.tail(alg.dim_z());
    return f_of(alg, which, lambda + off(0), mu.norm());
  };
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
  if (order == 0) return std::abs(F(zero));
  auto e = [&](int i) { return Eigen::VectorXd::Unit(d, i) * h; };
  double best = 0.0;
  if (order == 1) {
    for (int i = 0; i < d; ++i) best = std::max(best, std::abs(lambda * (F(e(i)) - F(-e(i))) / (2.0 * h)));
    return best;
  }
  const double f0 = F(zero);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const double v = i == j ? (F(e(i)) - 2.0 * f0 + F(-e(i))) / (h * h)
                              : (F(e(i) + e(j)) - F(e(i) - e(j)) - F(e(j) - e(i)) + F(-e(i) - e(j))) / (4.0 * h * h);
      best = std::max(best, std::abs(lambda * lambda * v));
    }
  return best;
}

SweepReport symbol_derivative_sweep(const HTypeAlgebra<double>& alg, FSymbol which, int order,
                                    const std::vector<ConePoint>& grid, double c) {
  SweepReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (const ConePoint& p : grid) {
    const double r = symbol_derivative(alg, which, order, p.lambda, p.mu) / symbol_envelope(which, order, p.lambda, p.mu, c);
    rep.ratios.push_back(r);
    rep.finite = rep.finite && std::isfinite(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    rep.min_ratio = std::min(rep.min_ratio, r);
  }
  return rep;
}

HolderReport holder_check(const HTypeAlgebra<double>& alg, int order, double eps, const std::vector<double>& separations,
                          int pairs, double kappa, std::uint64_t seed) {
  if (order < 0 || order > 2) throw std::invalid_argument("order must be 0, 1 or 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  auto value = [&](double lam, double m) {
    if (order == 0) return f_of(alg, FSymbol::F0, lam, m);
    const double h = 1e-3 * lam;
    const double fp = f_of(alg, FSymbol::F0, lam + h, m), fm = f_of(alg, FSymbol::F0, lam - h, m);
    if (order == 1) return lam * (fp - fm) / (2.0 * h);
    return lam * lam * (fp - 2.0 * f_of(alg, FSymbol::F0, lam, m) + fm) / (h * h);
  };
  HolderReport rep;
  for (double delta : separations) {
    double sup = 0.0;
    for (int i = 0; i < pairs; ++i) {
      double lam, m, lam2, m2;
      do {
        lam = std::pow(10.0, -2.0 + 4.0 * ud(rng));
        m = ud(rng) * lam / kappa;
        const double th = 2.0 * std::numbers::pi * ud(rng);
        lam2 = lam + delta * std::cos(th);
        m2 = std::abs(m + delta * std::sin(th));
      } while (!(lam2 > 0.0) || lam2 < kappa * m2);
      const double r = std::abs(value(lam, m) - value(lam2, m2)) / std::pow(delta, eps);
      sup = std::max(sup, r);
    }
    rep.separations.push_back(delta);
    rep.sup_ratio.push_back(sup);
  }
  return rep;
}

double r_bound_estimate(const std::vector<OperatorMatrix>& family, double p, int trials, std::uint64_t seed) {
  if (family.empty()) throw std::invalid_argument("empty operator family");
  if (!(p > 1.0) || trials < 1) throw std::invalid_argument("r_bound_estimate needs p > 1 and trials >= 1");
  const LogGrid grid = family.front().grid;
  const Eigen::Index n = family.front().entries.rows();
  for (const auto& T : family)
    if (T.grid.N != grid.N || T.grid.U != grid.U || T.entries.rows() != n || T.entries.cols() != n)
      throw std::invalid_argument("family members must share a grid");
  const std::vector<double> cell = cell_weights(grid, A2Weight::flat());
  const int m = static_cast<int>(family.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;

  std::vector<std::vector<int>> signs;
  if (m <= 12) {
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> s(m);
      for (int i = 0; i < m; ++i) s[i] = (mask >> i) & 1 ? 1 : -1;
      signs.push_back(s);
    }
  } else {
    std::bernoulli_distribution bd(0.5);
    for (int t = 0; t < std::max(trials, 64); ++t) {
      std::vector<int> s(m);
      for (int i = 0; i < m; ++i) s[i] = bd(rng) ? 1 : -1;
      signs.push_back(s);
    }
  }

  auto ratio = [&](const std::vector<Eigen::VectorXd>& f) {
    std::vector<Eigen::VectorXd> Tf(m);
    for (int i = 0; i < m; ++i) Tf[i] = family[i].entries * f[i];
    double num = 0.0, den = 0.0;
    for (const auto& s : signs) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(n), b = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < m; ++i) {
        a += s[i] * Tf[i];
        b += s[i] * f[i];
      }
      num += std::pow(discrete_lp_norm(a, cell, p), p);
      den += std::pow(discrete_lp_norm(b, cell, p), p);
    }
    return den > 0.0 ? std::pow(num / den, 1.0 / p) : 0.0;
  };

  double best = 0.0;
  for (int i = 0; i < m; ++i) {
    std::vector<Eigen::VectorXd> f(m, Eigen::VectorXd::Zero(n));
    f[i] = top_input(family[i], cell, 10000);
    best = std::max(best, ratio(f));
  }
  for (int t = 0; t < trials; ++t) {
    std::vector<Eigen::VectorXd> f(m);
    for (int i = 0; i < m; ++i) {
      f[i].resize(n);
      for (Eigen::Index k = 0; k < n; ++k) f[i](k) = nd(rng);
    }
    best = std::max(best, ratio(f));
  }
  return best;
}

double smooth_step(double x, double a, double b) {
  auto g = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double l = g(x - a), r = g(b - x);
  return l / (l + r);
}

double chi0(double s) { return 1.0 - smooth_step(s, 1.0, 2.0); }

double dyadic_eta(double xi_norm) { return chi0(xi_norm) - chi0(2.0 * xi_norm); }

double dyadic_chi(double xi_norm) { return smooth_step(xi_norm, 0.25, 0.5) * (1.0 - smooth_step(xi_norm, 2.0, 3.0)); }

DyadicValues dyadic_tools(int m, const std::vector<double>& k, const std::vector<double>& xi) {
  if (k.size() != xi.size()) throw std::invalid_argument("k and xi need equal dimension");
  const double scale = std::ldexp(1.0, m);
  double norm2 = 0.0, phase = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    norm2 += xi[i] * xi[i];
    phase += k[i] * scale * xi[i];
  }
  const double s = scale * std::sqrt(norm2);
  const std::complex<double> E = dyadic_chi(s) * std::polar(1.0, phase);
  return {dyadic_eta(s), E.real(), E.imag()};
}

double dyadic_partition_sum(double xi_norm, int m_max) {
  double s = 0.0;
  for (int m = -m_max; m <= m_max; ++m) s += dyadic_eta(std::ldexp(xi_norm, m));
  return s;
}

std::vector<double> fourier_coefficients(const std::function<double(double)>& g, int k_max, int points) {
  if (k_max < 0 || points < 2 * k_max + 1) throw std::invalid_argument("need points > 2 k_max");
  std::vector<double> x(points), gx(points);
  for (int j = 0; j < points; ++j) {
    x[j] = -std::numbers::pi + 2.0 * std::numbers::pi * j / points;
    gx[j] = g(x[j]);
  }
  std::vector<double> out(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    std::complex<double> c = 0.0;
    for (int j = 0; j < points; ++j) c += gx[j] * std::polar(1.0, -k * x[j]);
    out[k] = std::abs(c) / points;
  }
  return out;
}

}  // namespace drkit
