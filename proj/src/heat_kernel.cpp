#include "drkit/heat_kernel.hpp"

#include <algorithm>
#include <numbers>
#include <thread>

namespace drkit {

namespace {

constexpr int kSeriesTerms = 60;

// arccosh(1 + w)^2 = sum_m c_m w^m, c_1 = 2, c_{k+1} = -k^2 c_k / ((k + 1)(2k + 1)).
const std::vector<double>& acosh_sq_series() {
  static const std::vector<double> c = [] {
    std::vector<double> v(kSeriesTerms + 1, 0.0);
    v[1] = 2.0;
    for (int k = 1; k < kSeriesTerms; ++k) v[k + 1] = -double(k) * k * v[k] / ((k + 1.0) * (2.0 * k + 1.0));
    return v;
  }();
  return c;
}

double acosh_sq(double w) {
  const double a = std::log1p(w + std::sqrt(w * (w + 2.0)));
  return a * a;
}

void check_even_dv(int dim_v, int dim_z) {
  if (dim_v < 2 || dim_v % 2 != 0 || dim_z < 1) throw std::invalid_argument("heat kernel needs even dv >= 2, dz >= 1");
}

}  // namespace

Jet<double> arccosh_sq_jet(double w0, int order) {
  if (w0 < 0.5) return polyval(acosh_sq_series(), Jet<double>::variable(order, w0));
  const Jet<double> w = Jet<double>::variable(order, w0);
  const Jet<double> l = log(1.0 + w + sqrt(w * (w + 2.0)));
  return l * l;
}

Jet<double> derived_real_heat_jet(int p, int q, double t, double w0, int order) {
  const int total = p + q + order;
  Jet<double> a = arccosh_sq_jet(w0, total);
  a[0] = 0.0;
  Jet<double> f = exp(a * (-1.0 / t));
  for (int i = 0; i < p; ++i) f = jet_apply_derivation(f, Jet<double>(f.order(), 2.0));
  const Jet<double> four_y = 4.0 * Jet<double>::variable(total, 1.0 + w0);
  for (int i = 0; i < q; ++i) f = jet_apply_derivation(f, four_y.truncated(f.order()));
  return f;
}

RadialHeat radial_heat_eval(int dim_v, int dim_z, double t, double r, int derivs, double rel_tol) {
  check_even_dv(dim_v, dim_z);
  if (!(t > 0.0)) throw std::domain_error("heat kernel needs t > 0");
  if (!(r >= 0.0)) throw std::domain_error("heat kernel needs r >= 0");
  if (derivs < 0 || derivs > 2) throw std::invalid_argument("derivs must be 0, 1 or 2");
  const double pi = std::numbers::pi;
  const int p = dim_v / 2, n = dim_v + dim_z;
  const double sh = std::sinh(0.25 * r);
  const double w = 2.0 * sh * sh, y = 1.0 + w;
  const double A = acosh_sq(w);
  RadialHeat out;
  out.log_scale = -A / t - 0.5 * std::log(4.0 * pi * t);
  if (dim_z % 2 == 0) {
    const double c = std::pow(2.0, -dim_v - 0.5 * dim_z) * std::pow(pi, -0.5 * n);
    const Jet<double> J = derived_real_heat_jet(p, dim_z / 2, t, w, derivs);
    out.g0 = c * J[0];
    if (derivs >= 1) out.g1 = c * J[1];
    if (derivs >= 2) out.g2 = c * 2.0 * J[2];
    return out;
  }
  const int q = (dim_z + 1) / 2;
  const double c = std::pow(2.0, -dim_v - 0.5 * dim_z) * std::pow(pi, -0.5 * (n + 1));
  // Substitution cosh s = cosh r + u^2, so y_s^2 = y^2 + u^2 / 2 and d nu_r = 2 du.
  auto u_at_drop = [&](double drop) {
    const double yt = std::cosh(std::sqrt(A + drop * t));
    return std::sqrt(2.0 * (yt - y) * (yt + y));
  };
  const double umax = u_at_drop(45.0);
  if (!std::isfinite(umax)) throw std::domain_error("heat kernel time too large for the odd-centre quadrature");
  // Scale points of the integrand so no panel can miss its peak.
  std::vector<double> cuts;
  for (double drop : {0.25, 1.0, 4.0, 16.0}) cuts.push_back(u_at_drop(drop));
  auto jet_at = [&](double u, int order, double& ys) {
    ys = std::sqrt(y * y + 0.5 * u * u);
    const double ws = (w * (w + 2.0) + 0.5 * u * u) / (ys + 1.0);
    Jet<double> J = derived_real_heat_jet(p, q, t, ws, order);
    J *= 2.0 * std::exp(-(acosh_sq(ws) - A) / t);
    return J;
  };
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  auto f0 = [&](double u) {
    double ys;
    return jet_at(u, 0, ys)[0];
  };
  const QuadResult i0 = detail::integrate_split(f0, 0.0, umax, cuts, spec);
  if (!i0.converged) throw std::runtime_error("heat kernel quadrature did not converge");
  out.g0 = c * i0.value;
  spec.abs_tol = 1e-3 * rel_tol * std::abs(i0.value);
  if (derivs >= 1) {
    auto f1 = [&](double u) {
      double ys;
      const Jet<double> J = jet_at(u, 1, ys);
      return J[1] * y / ys;
    };
    const QuadResult i1 = detail::integrate_split(f1, 0.0, umax, cuts, spec);
    out.g1 = c * i1.value;
  }
  if (derivs >= 2) {
    auto f2 = [&](double u) {
      double ys;
      const Jet<double> J = jet_at(u, 2, ys);
      const double k = y / ys;
      return 2.0 * J[2] * k * k + J[1] * 0.5 * u * u / (ys * ys * ys);
    };
    const QuadResult i2 = detail::integrate_split(f2, 0.0, umax, cuts, spec);
    out.g2 = c * i2.value;
  }
  return out;
}

double radial_heat(const HTypeAlgebra<double>& alg, double t, double r) {
  return radial_heat_eval(alg.dim_v(), alg.dim_z(), t, r, 0).value();
}

double heat_at_point(const HTypeAlgebra<double>& alg, double t, const SPoint<double>& p) {
  const RadialHeat e = radial_heat_eval(alg.dim_v(), alg.dim_z(), t, distance_s(alg, p), 0);
  return e.g0 * std::exp(e.log_scale - 0.5 * alg.Q() * std::log(p.a));
}

Vec<double> grad_heat(const HTypeAlgebra<double>& alg, double t, const SPoint<double>& p) {
  const double r = distance_s(alg, p);
  const RadialHeat e = radial_heat_eval(alg.dim_v(), alg.dim_z(), t, r, 1);
  const double y = std::cosh(0.5 * r);
  const double scale = std::exp(e.log_scale - 0.5 * alg.Q() * std::log(p.a));
  const double gc = e.g1 / (2.0 * y);
  Vec<double> g = gc * grad_cosh2(alg, p);
  g(0) -= 0.5 * alg.Q() * e.g0;
  return scale * g;
}

HeatProfile::HeatProfile(const HTypeAlgebra<double>& alg, double t, double r_max, double step)
    : t_(t), r_max_(r_max), step_(step) {
  if (!(r_max > 0.0) || !(step > 0.0)) throw std::invalid_argument("invalid heat profile range");
  const int count = static_cast<int>(std::ceil(r_max / step)) + 3;
  logg_.resize(count);
  dlogg_.resize(count);
  d2logg_.resize(count);
  ds1_.resize(count);
  s1_.resize(count);
  s2_.resize(count);
  const int dv = alg.dim_v(), dz = alg.dim_z();
  auto fill = [&](int begin, int stride) {
    for (int i = begin; i < count; i += stride) {
      const double r = i * step;
      const RadialHeat e = radial_heat_eval(dv, dz, t, r, 2, 1e-11);
      const double yr = 0.5 * std::sinh(0.5 * r), yrr = 0.25 * std::cosh(0.5 * r);
      logg_[i] = e.log_value();
      s1_[i] = e.g1 / e.g0;
      s2_[i] = e.g2 / e.g0;
      ds1_[i] = (s2_[i] - s1_[i] * s1_[i]) * yr;
      dlogg_[i] = s1_[i] * yr;
      d2logg_[i] = ds1_[i] * yr + s1_[i] * yrr;
    }
  };
  const int workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int k = 1; k < workers; ++k) pool.emplace_back(fill, k, workers);
  fill(0, workers);
  for (auto& th : pool) th.join();
}

double HeatProfile::log_value(double r) const {
  const double s = r / step_;
  const int i = std::min(static_cast<int>(s), static_cast<int>(logg_.size()) - 2);
  const double x = s - i, x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
  const double h = step_, hh = step_ * step_;
  // Quintic Hermite basis on [0, 1].
  const double b0 = 1 - 10 * x3 + 15 * x4 - 6 * x5, b1 = x - 6 * x3 + 8 * x4 - 3 * x5;
  const double b2 = 0.5 * (x2 - 3 * x3 + 3 * x4 - x5), b3 = 10 * x3 - 15 * x4 + 6 * x5;
  const double b4 = -4 * x3 + 7 * x4 - 3 * x5, b5 = 0.5 * (x3 - 2 * x4 + x5);
  return b0 * logg_[i] + b1 * h * dlogg_[i] + b2 * hh * d2logg_[i] + b3 * logg_[i + 1] + b4 * h * dlogg_[i + 1] +
         b5 * hh * d2logg_[i + 1];
}

double HeatProfile::score1(double r) const {
  const double s = r / step_;
  const int i = std::min(static_cast<int>(s), static_cast<int>(s1_.size()) - 2);
  const double x = s - i;
  const double h00 = (1 + 2 * x) * (1 - x) * (1 - x), h10 = x * (1 - x) * (1 - x);
  const double h01 = x * x * (3 - 2 * x), h11 = x * x * (x - 1);
  return h00 * s1_[i] + h10 * step_ * ds1_[i] + h01 * s1_[i + 1] + h11 * step_ * ds1_[i + 1];
}

double HeatProfile::lagrange(const std::vector<double>& v, double r) const {
  const double s = r / step_;
  const int last = static_cast<int>(v.size()) - 1;
  const int i = std::clamp(static_cast<int>(s) - 1, 0, last - 3);
  const double x = s - i;
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    double l = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) l *= (x - b) / double(a - b);
    out += l * v[i + a];
  }
  return out;
}

double HeatProfile::score2(double r) const { return lagrange(s2_, r); }

double grad_heat_magnitude(const HTypeAlgebra<double>& alg, const HeatProfile& prof, double rho_x, double rho_z,
                           double u) {
  const double r = reduced_distance(rho_x, rho_z, u);
  if (r > prof.r_max()) return 0.0;
  const double Q = alg.Q();
  const double a = std::exp(u);
  const double y = std::cosh(0.5 * r);
  const double gfac = prof.score1(r) / (2.0 * y);
  const double s = 1.0 + a + 0.25 * rho_x * rho_x;
  const double x0c = -y * y + 0.5 * s;
  const double rest = (s * s + rho_z * rho_z) * rho_x * rho_x / (16.0 * a) + 0.25 * rho_z * rho_z;
  const double c0 = -0.5 * Q + gfac * x0c;
  return std::exp(-0.5 * Q * u + prof.log_value(r)) * std::sqrt(c0 * c0 + gfac * gfac * rest);
}

double heat_cutoff_radius(double t, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must lie in [0, 1)");
  return 10.0 + std::sqrt(4.0 * t * 50.0 / (1.0 - epsilon));
}

L1Result weighted_l1(const HTypeAlgebra<double>& alg, double t, double epsilon, L1Kind which, double rel_tol) {
  const double R = heat_cutoff_radius(t, epsilon);
  const HeatProfile prof(alg, t, R);
  const double Q = alg.Q();
  HaarRegion region;
  region.u_min = -R;
  region.u_max = R;
  region.radial_breaks = {R};
  region.rel_tol = rel_tol;
  region.abs_tol = 1e-300;
  auto f = [&](double rx, double rz, double u) {
    const double r = reduced_distance(rx, rz, u);
    if (r > R) return 0.0;
    const double wgt = epsilon * r * r / (4.0 * t);
    if (which == L1Kind::kernel) return std::exp(-0.5 * Q * u + prof.log_value(r) + wgt);
    return grad_heat_magnitude(alg, prof, rx, rz, u) * std::exp(wgt);
  };
  const HaarResult h = integrate_haar_reduced(alg, f, region);
  return {h.value, h.error, h.converged};
}

ResidualResult heat_equation_residual(const HTypeAlgebra<double>& alg, double t, const SPoint<double>& p, double step,
                                      double time_scale) {
  auto h = [&](double tau, const SPoint<double>& q) {
    const RadialHeat e = radial_heat_eval(alg.dim_v(), alg.dim_z(), time_scale * tau, distance_s(alg, q), 0, 1e-13);
    return e.g0 * std::exp(e.log_scale - 0.5 * alg.Q() * std::log(q.a));
  };
  ResidualResult out;
  out.value = h(t, p);
  const double k = 1e-3 * t;
  out.dt = (-h(t + 2 * k, p) + 8 * h(t + k, p) - 8 * h(t - k, p) + h(t - 2 * k, p)) / (12 * k);
  double sum = 0.0;
  for (int j = 0; j <= alg.n(); ++j) {
    auto f = [&](double s) { return h(t, flow_s(alg, j, p, s)); };
    sum += (-f(2 * step) + 16 * f(step) - 30 * out.value + 16 * f(-step) - f(-2 * step)) / (12 * step * step);
  }
  out.laplacian = -sum;
  out.residual = std::abs(out.dt + out.laplacian) / (std::abs(out.value) / t + std::abs(out.laplacian));
  return out;
}

double second_derivative_heat(const HTypeAlgebra<double>& alg, const HeatProfile& prof, int j, int k,
                              const SPoint<double>& p) {
  const double r = distance_s(alg, p);
  if (r > prof.r_max()) return 0.0;
  const double Q = alg.Q();
  const double y = std::cosh(0.5 * r);
  const double s1 = prof.score1(r), s2 = prof.score2(r);
  const double gc = s1 / (2.0 * y);
  const double gcc = s2 / (4.0 * y * y) - s1 / (4.0 * y * y * y);
  const Vec<double> xc = grad_cosh2(alg, p);
  const double xjkc = left_invariant_derivative_s(alg, j, [&](const SPoint<double>& q) { return grad_cosh2(alg, q)(k); }, p);
  const double dj = j == 0 ? -0.5 * Q : 0.0, dk = k == 0 ? -0.5 * Q : 0.0;
  const double djk = (j == 0 && k == 0) ? 0.25 * Q * Q : 0.0;
  const double rel = djk + dk * gc * xc(j) + dj * gc * xc(k) + gcc * xc(j) * xc(k) + gc * xjkc;
  return rel * std::exp(-0.5 * Q * std::log(p.a) + prof.log_value(r));
}

L1Result second_derivative_local_l1(const HTypeAlgebra<double>& alg, double t, const HaarRegion& region, int j,
                                    int k) {
  double R = 0.0;
  for (double u : {region.u_min, region.u_max}) R = std::max(R, reduced_distance(region.x_max, region.z_max, u));
  const HeatProfile prof(alg, t, R + 1.0, 0.01);
  auto f = [&](const SPoint<double>& p) { return std::abs(second_derivative_heat(alg, prof, j, k, p)); };
  const HaarResult h = integrate_haar_full(alg, f, region);
  return {h.value, h.error, h.converged};
}

double heat_envelope(const HTypeAlgebra<double>& alg, double t, double r) {
  const double n = alg.n();
  return std::pow(t, -1.5) * (1.0 + r) * std::pow(1.0 + (1.0 + r) / t, 0.5 * (n - 2.0)) *
         std::exp(-0.5 * alg.Q() * r - r * r / (4.0 * t));
}

double grad_heat_envelope(const HTypeAlgebra<double>& alg, double t, double r) {
  const double n = alg.n();
  return std::pow(t, -1.5) * r * std::pow(1.0 + (1.0 + r) / t, 0.5 * n) *
         std::exp(-0.5 * alg.Q() * r - r * r / (4.0 * t));
}

}  // namespace drkit
