#include "drkit/gelfand.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drkit/dr_space.hpp"
#include "drkit/quadrature.hpp"
#include "drkit/specfun.hpp"

namespace drkit {

namespace {

constexpr double kPi = std::numbers::pi;

double binom_laguerre(int ell, double a) {
  return std::exp(std::lgamma(ell + a + 1.0) - std::lgamma(ell + 1.0) - std::lgamma(a + 1.0));
}

// log(u / sinh u) for u >= 0.
double log_s(double u) {
  if (u < 1e-4) return std::log(st_funcs(u).S);
  return std::log(2.0 * u) - u - std::log1p(-std::exp(-2.0 * u));
}

// log(sinh x / x) for x >= 0.
double log_sinhc(double x) {
  if (x < 1e-4) return x * x / 6.0;
  return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
}

enum class Factor { none, xi1, xi2 };

double xi_constant(const HTypeAlgebra<double>& alg, double s) {
  const double dv = alg.dim_v(), Q = alg.Q(), n = alg.n();
  return std::exp(dv * std::log(2.0) + 0.5 * n * std::log(kPi) + std::lgamma(dv / 4.0 + s / 2.0) -
                  std::lgamma((Q + s) / 2.0) - std::lgamma(dv / 2.0 + s));
}

// c_s int_0^inf S(tm)^{1+s} e^{-T(tm)/t - t lambda} t^{-s-1} (-t)^k factor(t) dt in w = log t.
double xi_integral(const HTypeAlgebra<double>& alg, double s, double lambda, double m, int k, Factor factor) {
  if (!(s > -1.0)) throw std::domain_error("xi_s requires s > -1");
  if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (!(m >= 0.0) || !std::isfinite(lambda)) throw std::domain_error("invalid spectral point");
  const double rate = lambda + (s + 1.0) * m - (factor == Factor::none ? 0.0 : 2.0 * m);
  if (!(rate > 0.0)) throw std::domain_error("Xi integral diverges at this spectral point");
  auto g = [&](double w) {
    const double t = std::exp(w), u = t * m;
    double e = (1.0 + s) * log_s(u) - st_funcs(u).T / t - t * lambda + (k - s) * w;
    if (factor == Factor::xi1) e += std::log(2.0) + log_sinhc(2.0 * u);
    if (factor == Factor::xi2) e += 2.0 * log_sinhc(u);
    return std::exp(e);
  };
  const double w_lo = std::log(1.0 / 800.0), w_hi = std::log(900.0 / rate + 1.0);
  std::vector<double> cuts;
  for (double c = std::ceil(w_lo); c < w_hi; c += 1.0) cuts.push_back(c);
  QuadSpec spec;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-12;
  const QuadResult r = detail::integrate_split(g, w_lo, w_hi, cuts, spec);
  if (!r.converged) throw std::runtime_error("Xi quadrature did not converge");
  return (k % 2 ? -1.0 : 1.0) * xi_constant(alg, s) * r.value;
}

void require_reduced_centre(const HTypeAlgebra<double>& alg) {
  if (alg.dim_z() != 1 && alg.dim_z() != 3)
    throw std::invalid_argument("reduced Gelfand transform supports dz = 1 or 3 only");
}

// int_{R^dz} f(rho, |z|) e^{-i mu z} dz for radial f and |mu| = m.
double z_transform(const HTypeAlgebra<double>& alg, const NRadialProfile& f, double rho, double m,
                   const GelfandOptions& opt) {
  const bool cosine = alg.dim_z() == 1;
  auto g = [&](double z) {
    if (cosine) return 2.0 * f(rho, z) * std::cos(m * z);
    const double mz = m * z;
    const double sinc = std::abs(mz) < 1e-8 ? 1.0 - mz * mz / 6.0 : std::sin(mz) / mz;
    return 4.0 * kPi * z * z * f(rho, z) * sinc;
  };
  QuadSpec spec;
  spec.rel_tol = 0.1 * opt.z_rel_tol;
  const bool alternating = m > 0.0;
  const double half = alternating ? kPi / m : 1.0;
  double sum = 0.0, abs_sum = 0.0, last = 0.0, z0 = 0.0;
  int quiet = 0;
  for (int chunk = 0; chunk < 100000; ++chunk) {
    const double z1 = alternating ? z0 + half : std::max(1.0, 2.0 * z0);
    std::vector<double> cuts;
    for (double c = 1.0; c < z1; c *= 2.0)
      if (c > z0) cuts.push_back(c);
    spec.abs_tol = std::max(1e-300, 0.1 * opt.z_rel_tol * abs_sum);
    const QuadResult r = detail::integrate_split(g, z0, z1, cuts, spec);
    if (!r.converged) throw std::runtime_error("z-transform quadrature did not converge");
    sum += r.value;
    abs_sum += std::abs(r.value);
    last = r.value;
    z0 = z1;
    quiet = std::abs(r.value) <= opt.z_rel_tol * abs_sum ? quiet + 1 : 0;
    if (quiet >= 2 && z0 >= 4.0) return alternating ? sum - 0.5 * last : sum;
  }
  throw std::runtime_error("z-transform did not converge");
}

}  // namespace

double GelfandPoint::lambda(int dim_v) const {
  if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
  return (2.0 * ell + 0.5 * dim_v) * mu.norm();
}

std::vector<double> gelfand_radial_all(const HTypeAlgebra<double>& alg, const NRadialProfile& f, double m, int L,
                                       const GelfandOptions& opt) {
  require_reduced_centre(alg);
  if (L < 0) throw std::invalid_argument("L must be nonnegative");
  if (!(m >= 0.0)) throw std::invalid_argument("|mu| must be nonnegative");
  const int dv = alg.dim_v();
  const double a = 0.5 * dv - 1.0;
  // Laguerre-Gaussian factor oscillates like J_a(k rho) with k = sqrt(2 nu m).
  const double nu = L + 0.5 * (a + 1.0);
  const double k = std::sqrt(2.0 * nu * m);
  const double h = k > 0.0 ? std::min(0.5, 2.0 / k) : 0.5;
  const auto [nodes, weights] = gauss_legendre(opt.panel_order);
  std::vector<double> sum(L + 1, 0.0), abs_sum(L + 1, 0.0), panel(L + 1);
  int quiet = 0;
  for (int p = 0; p < 1000000; ++p) {
    const double r0 = p * h;
    std::fill(panel.begin(), panel.end(), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double rho = r0 + 0.5 * h * (nodes[i] + 1.0);
      const double y = 0.5 * m * rho * rho;
      const double base = 0.5 * h * weights[i] * std::pow(rho, dv - 1) * std::exp(-0.5 * y);
      if (base == 0.0) continue;
      const double zt = z_transform(alg, f, rho, m, opt);
      const std::vector<double> lag = laguerre_all(L, a, y);
      for (int l = 0; l <= L; ++l) panel[l] += base * lag[l] * zt;
    }
    double peak = 0.0, mass = 0.0;
    for (int l = 0; l <= L; ++l) {
      sum[l] += panel[l];
      abs_sum[l] += std::abs(panel[l]);
      peak = std::max(peak, std::abs(panel[l]));
      mass = std::max(mass, abs_sum[l]);
    }
    quiet = peak <= 1e-15 * mass ? quiet + 1 : 0;
    if (quiet >= 3 && r0 + h >= 1.0) {
      const double area = sphere_area(dv);
      for (int l = 0; l <= L; ++l) sum[l] *= area / binom_laguerre(l, a);
      return sum;
    }
  }
  throw std::runtime_error("Gelfand transform did not converge");
}

double gelfand_radial(const HTypeAlgebra<double>& alg, const NRadialProfile& f, const GelfandPoint& gp,
                      const GelfandOptions& opt) {
  if (gp.mu.size() != alg.dim_z()) throw std::invalid_argument("mu has wrong dimension");
  if (gp.ell < 0) throw std::invalid_argument("ell must be nonnegative");
  return gelfand_radial_all(alg, f, gp.mu.norm(), gp.ell, opt)[gp.ell];
}

std::vector<double> uniform_mu_grid(double mu_max, int panels) {
  if (!(mu_max > 0.0) || panels < 1) throw std::invalid_argument("invalid mu grid");
  std::vector<double> g(panels + 1);
  for (int i = 0; i <= panels; ++i) g[i] = mu_max * i / panels;
  return g;
}

PlancherelReport plancherel_check(const HTypeAlgebra<double>& alg, const NRadialProfile& f, int L_max,
                                  const std::vector<double>& mu_grid, double tail_tol) {
  require_reduced_centre(alg);
  if (L_max < 1) throw std::invalid_argument("L_max must be at least 1");
  if (mu_grid.size() < 2 || mu_grid.front() != 0.0) throw std::invalid_argument("mu grid must start at 0");
  const int dv = alg.dim_v(), dz = alg.dim_z();
  const double a = 0.5 * dv - 1.0;
  PlancherelReport rep;

  QuadSpec spec;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-11;
  auto outer = [&](double rx) {
    auto inner = [&](double rz) {
      const double v = f(rx, rz);
      return v * v * std::pow(rz, dz - 1);
    };
    return std::pow(rx, dv - 1) * detail::integrate_radial(inner, 0.0, INFINITY, {}, spec).value;
  };
  rep.lhs = sphere_area(dv) * sphere_area(dz) * detail::integrate_radial(outer, 0.0, INFINITY, {}, spec).value;

  const auto [nodes, weights] = gauss_legendre(16);
  double unresolved = 0.0;
  const double scale = std::pow(2.0 * kPi, -alg.Q()) * sphere_area(dz);
  for (std::size_t p = 0; p + 1 < mu_grid.size(); ++p) {
    const double m0 = mu_grid[p], m1 = mu_grid[p + 1];
    if (!(m1 > m0)) throw std::invalid_argument("mu grid must increase");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double m = m0 + 0.5 * (m1 - m0) * (nodes[i] + 1.0);
      const double w = 0.5 * (m1 - m0) * weights[i] * scale * std::pow(m, dz - 1 + 0.5 * dv);
      const std::vector<double> G = gelfand_radial_all(alg, f, m, L_max);
      double s = 0.0, last = 0.0, prev = 0.0;
      for (int l = 0; l <= L_max; ++l) {
        prev = last;
        last = binom_laguerre(l, a) * G[l] * G[l];
        s += last;
      }
      double tail = 0.0;
      if (last > 0.0) {
        const double q = prev > 0.0 ? last / prev : 1.0;
        if (q < 1.0)
          tail = last * q / (1.0 - q);
        else if (last > 1e-10 * s)
          unresolved += w * s;
      }
      rep.rhs_truncated += w * s;
      rep.tail += w * tail;
    }
  }
  rep.rhs = rep.rhs_truncated + rep.tail;
  const double denom = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.rel_err = denom > 0.0 ? std::abs(rep.lhs - rep.rhs) / denom : 0.0;
  if (denom > 0.0 && (rep.tail > tail_tol * denom || unresolved > tail_tol * denom)) rep.inconclusive = true;
  return rep;
}

NRadialProfile psi_profile(const HTypeAlgebra<double>& alg, double s) {
  const double e = -0.5 * (alg.Q() + s);
  return [e](double rx, double rz) {
    const double b = 1.0 + 0.25 * rx * rx;
    return std::pow(b * b + rz * rz, e);
  };
}

double xi_s(const HTypeAlgebra<double>& alg, double s, double lambda, double mu_abs, int k) {
  return xi_integral(alg, s, lambda, mu_abs, k, Factor::none);
}

double xi_s(const HTypeAlgebra<double>& alg, double s, double lambda, const Vec<double>& mu, int k) {
  if (mu.size() != alg.dim_z()) throw std::invalid_argument("mu has wrong dimension");
  return xi_s(alg, s, lambda, mu.norm(), k);
}

XiAverages xi_averages(const HTypeAlgebra<double>& alg, double s, double lambda, double m, int order,
                       bool self_check) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  if (!(lambda - 2.0 * m + (s + 1.0) * m > 0.0)) throw std::domain_error("shifted lambda outside the supported domain");
  auto rule = [&](int nord) {
    const auto [nodes, weights] = gauss_legendre(nord);
    XiAverages out;
    for (double side : {-1.0, 1.0})
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = side * 0.5 * (nodes[i] + 1.0), w = 0.5 * weights[i];
        const double shifted = lambda + 2.0 * v * m;
        out.xi1 += w * xi_integral(alg, s, shifted, m, 1, Factor::none);
        out.xi2 += w * (1.0 - std::abs(v)) * xi_integral(alg, s, shifted, m, 2, Factor::none);
      }
    return out;
  };
  XiAverages base = rule(order);
  if (!self_check) return base;
  const XiAverages fine = rule(2 * order);
  const double mag = std::abs(fine.xi1) + std::abs(fine.xi2);
  base.doubling_change = mag > 0.0 ? (std::abs(fine.xi1 - base.xi1) + std::abs(fine.xi2 - base.xi2)) / mag : 0.0;
  return base;
}

XiAverages xi_averages_closed(const HTypeAlgebra<double>& alg, double s, double lambda, double m) {
  XiAverages out;
  out.xi1 = xi_integral(alg, s, lambda, m, 1, Factor::xi1);
  out.xi2 = xi_integral(alg, s, lambda, m, 2, Factor::xi2);
  return out;
}

double xi_tilde(const HTypeAlgebra<double>& alg, double s, double lambda, double m, XiMethod method) {
  if (!(lambda - 2.0 * m + (s + 1.0) * m > 0.0)) throw std::domain_error("shifted lambda outside the supported domain");
  const XiAverages av = method == XiMethod::closed_form ? xi_averages_closed(alg, s, lambda, m)
                                                        : xi_averages(alg, s, lambda, m, 32, false);
  return xi_s(alg, s, lambda, m) - lambda * av.xi2 - 0.25 * alg.dim_v() * av.xi1;
}

double f_symbol(const HTypeAlgebra<double>& alg, FSymbol which, double lambda, double m, XiMethod method) {
  if (!(lambda > 0.0)) throw std::domain_error("F symbols require lambda > 0");
  switch (which) {
    case FSymbol::F0:
      return xi_tilde(alg, 2.0, lambda, m, method);
    case FSymbol::Fv:
      return std::sqrt(lambda) * xi_s(alg, 0.0, lambda, m);
    case FSymbol::Fz:
      return lambda * xi_s(alg, 0.0, lambda, m);
  }
  throw std::invalid_argument("unknown F symbol");
}

}  // namespace drkit
