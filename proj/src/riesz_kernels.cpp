#include "drkit/riesz_kernels.hpp"

#include <memory>
#include <numbers>
#include <random>

#include "drkit/heat_kernel.hpp"
#include "drkit/quadrature.hpp"
#include "drkit/specfun.hpp"

namespace drkit {

namespace {

void check_dims(int dim_v, int dim_z) {
  if (dim_v < 2 || dim_v % 2 != 0 || dim_z < 1) throw std::invalid_argument("kernel needs even dv >= 2, dz >= 1");
}

// Cut points in v for the odd-centre integral, dense near v = 0 where X close to 1 concentrates mass.
std::vector<double> odd_cuts(double v_max) {
  std::vector<double> cuts;
  for (double c = 1.0 / 64.0; c < v_max; c *= 2.0) cuts.push_back(c);
  return cuts;
}

}  // namespace

Jet<double> phi0(double X, int order) {
  if (!(X > 1.0)) throw std::domain_error("phi0 requires X > 1");
  const Jet<double> x = Jet<double>::variable(order, X);
  const Jet<double> s = sqrt(x * x - 1.0);
  return 1.0 / (s * log(x + s));
}

Jet<double> derived_phi0(int u, int v, double X, int order) {
  if (u < 0 || v < 0 || order < 0) throw std::invalid_argument("derived_phi0 needs nonnegative orders");
  Jet<double> f = phi0(X, u + v + order);
  const Jet<double> one(f.order(), 1.0);
  for (int i = 0; i < v; ++i) f = jet_apply_derivation(f, one.truncated(f.order()));
  const Jet<double> two_x = 2.0 * Jet<double>::variable(f.order(), X);
  for (int i = 0; i < u; ++i) f = jet_apply_derivation(f, two_x.truncated(f.order()));
  return f;
}

double phi_constant(int dim_v, int dim_z) {
  return std::pow(2.0, -dim_v - dim_z - 1) * std::pow(std::numbers::pi, -0.5 * (dim_v + dim_z + 3));
}

Jet<double> phi_big_jet(int dim_v, int dim_z, double X, int order, double rel_tol) {
  check_dims(dim_v, dim_z);
  if (!(X > 1.0)) throw std::domain_error("Phi requires X > 1");
  const double pre = std::pow(2.0, 1.0 - 0.5 * dim_v);
  if (dim_z % 2 == 0) return pre * std::sqrt(std::numbers::pi) * derived_phi0(dim_z / 2, dim_v / 2 - 1, X, order);
  const int u = (dim_z + 1) / 2, v = dim_v / 2 - 1;
  const double Q = 0.5 * dim_v + dim_z;
  // Integrand decays like exp(-Q v); the cutoff leaves a relative tail below 1e-16.
  const double v_max = 40.0 / Q + 2.0;
  const std::vector<double> cuts = odd_cuts(v_max);
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  // 2 X c g(X c) as a jet in X, with c = cosh v.
  auto integrand_jet = [&](double w) {
    const double c = std::cosh(w);
    Jet<double> g = derived_phi0(u, v, X * c, order);
    double ck = 1.0;
    for (int k = 0; k <= order; ++k, ck *= c) g[k] *= ck;
    return g * (2.0 * c * Jet<double>::variable(order, X));
  };
  Jet<double> out(order, 0.0);
  for (int k = 0; k <= order; ++k) {
    auto f = [&](double w) { return integrand_jet(w)[k]; };
    const QuadResult r = detail::integrate_split(f, 0.0, v_max, cuts, spec);
    if (!r.converged) throw std::runtime_error("Phi quadrature did not converge");
    out[k] = pre * r.value;
  }
  return out;
}

double phi_big(int dim_v, int dim_z, double X) { return phi_big_jet(dim_v, dim_z, X, 0)[0]; }

double phi_big_normalized(int dim_v, int dim_z, double X) {
  const double Q = 0.5 * dim_v + dim_z;
  return phi_big(dim_v, dim_z, X) * std::pow(X, Q) * std::log(X);
}

double phi_limit_constant(int dim_v, int dim_z) {
  return gamma_fn(0.25 * dim_v + 0.5) * gamma_fn(0.25 * dim_v + 0.5 * dim_z);
}

double kernel_invsqrt(const HTypeAlgebra<double>& alg, const SPoint<double>& p) {
  const double r = distance_s(alg, p);
  if (!(r > 0.0)) throw std::domain_error("kernel of Delta^{-1/2} is singular at the identity");
  const double X = std::cosh(0.5 * r);
  return std::pow(p.a, -0.5 * alg.Q()) * phi_constant(alg.dim_v(), alg.dim_z()) *
         phi_big(alg.dim_v(), alg.dim_z(), X);
}

double subordinated_invsqrt(const HTypeAlgebra<double>& alg, double r, double rel_tol) {
  if (!(r > 0.0)) throw std::domain_error("subordination needs r > 0");
  auto f = [&](double s) {
    const double t = std::exp(s);
    const RadialHeat e = radial_heat_eval(alg.dim_v(), alg.dim_z(), t, r, 0);
    return e.g0 * std::exp(e.log_scale + 0.5 * s);
  };
  // Below s_lo the factor exp(-r^2 / 4t) is under e^{-700}.
  const double s_lo = std::log(r * r / 2800.0), s_hi = 7.0;
  std::vector<double> cuts;
  for (double s = std::ceil(s_lo); s < s_hi; s += 1.0) cuts.push_back(s);
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-300;
  QuadResult q = detail::integrate_split(f, s_lo, s_hi, cuts, spec);
  if (!q.converged) throw std::runtime_error("subordination quadrature did not converge");
  // Beyond s_hi the integrand is e^{-s}(c0 + c1 e^{-s}) to leading orders; fit from two samples.
  const double f1 = f(s_hi), f0 = f(s_hi - 1.0);
  const double e1 = std::exp(-s_hi), e0 = std::exp(-(s_hi - 1.0));
  const double c1 = (f0 / e0 - f1 / e1) / (e0 - e1);
  const double c0 = f1 / e1 - c1 * e1;
  q.value += c0 * e1 + 0.5 * c1 * e1 * e1;
  return q.value / std::sqrt(std::numbers::pi);
}

double riesz_kernel(const HTypeAlgebra<double>& alg, int j, const SPoint<double>& p) {
  if (j < 0 || j > alg.n()) throw std::invalid_argument("Riesz index out of range");
  const double r = distance_s(alg, p);
  if (!(r > 0.0)) throw std::domain_error("Riesz kernel is singular at the identity");
  const double Q = alg.Q();
  const int dv = alg.dim_v();
  const double C = phi_constant(dv, alg.dim_z());
  const double phi2 = phi_big(dv, alg.dim_z() + 2, std::cosh(0.5 * r));
  const double s = 1.0 + p.a + 0.25 * p.x.squaredNorm();
  if (j == 0) return -0.5 * C * std::pow(p.a, -0.5 * Q) * (1.0 - 1.0 / p.a) * s * phi2;
  if (j <= dv)
    return -0.25 * C * std::pow(p.a, -0.5 * (Q + 1.0)) * (s * p.x(j - 1) + alg.bracket_ej_dot(p.x, j - 1, p.z)) * phi2;
  return -0.5 * C * std::pow(p.a, -0.5 * Q) * p.z(j - 1 - dv) * phi2;
}

double main_term_constant(int dim_v, int dim_z) {
  return std::pow(2.0, 1.0 - 0.5 * dim_v) * std::pow(std::numbers::pi, -0.5 * (dim_v + dim_z + 3)) *
         gamma_fn(0.25 * dim_v + 0.5) * gamma_fn(0.25 * dim_v + 0.5 * dim_z + 1.0);
}

double h_norm(const NPoint<double>& p) {
  const double b = 1.0 + 0.25 * p.x.squaredNorm();
  return b * b + p.z.squaredNorm();
}

MainTerms main_terms(const HTypeAlgebra<double>& alg) {
  MainTerms m;
  const double Q = alg.Q();
  const int dv = alg.dim_v(), n = alg.n();
  const auto a = std::make_shared<const HTypeAlgebra<double>>(alg);
  m.constant = main_term_constant(dv, alg.dim_z());
  m.H = [](const NPoint<double>& p) { return h_norm(p); };
  m.r.resize(n + 1);
  m.r[0] = [Q](const NPoint<double>& p) {
    return (1.0 + 0.25 * p.x.squaredNorm()) * std::pow(h_norm(p), -0.5 * (Q + 2.0));
  };
  for (int j = 1; j <= n; ++j) {
    if (j <= dv)
      m.r[j] = [Q, a, j](const NPoint<double>& p) {
        const double num = (1.0 + 0.25 * p.x.squaredNorm()) * p.x(j - 1) - a->bracket_ej_dot(p.x, j - 1, p.z);
        return 0.5 * num * std::pow(h_norm(p), -0.5 * (Q + 2.0));
      };
    else
      m.r[j] = [Q, dv, j](const NPoint<double>& p) { return p.z(j - 1 - dv) * std::pow(h_norm(p), -0.5 * (Q + 2.0)); };
  }
  const auto r0 = m.r[0];
  const double e = std::numbers::e;
  m.K0_tilde = [r0, e](const SPoint<double>& p) {
    if (p.a < e && p.a > 1.0 / e) return 0.0;
    return r0({p.x, p.z}) / std::log(p.a);
  };
  m.K.resize(n + 1);
  m.K[0] = [r0, e, Q](const SPoint<double>& p) {
    if (p.a < e) return 0.0;
    // (r_0)_{(a)}(x, z) = a^{-Q} r_0(a^{-1/2} x, a^{-1} z).
    const NPoint<double> q{p.x / std::sqrt(p.a), p.z / p.a};
    return (std::pow(p.a, -Q) * r0(q) - r0({p.x, p.z})) / std::log(p.a);
  };
  for (int j = 1; j <= n; ++j) {
    const auto rj = m.r[j];
    m.K[j] = [rj, e](const SPoint<double>& p) {
      if (p.a > 1.0 / e) return 0.0;
      return rj({p.x, p.z}) / std::log(p.a);
    };
  }
  return m;
}

RjReport verify_rj_identity(const HTypeAlgebra<double>& alg, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_rj_identity needs samples >= 1");
  const MainTerms m = main_terms(alg);
  const double Q = alg.Q();
  auto hq = [Q](const NPoint<double>& p) { return std::pow(h_norm(p), -0.5 * Q); };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  RjReport rep;
  for (int s = 0; s < samples; ++s) {
    NPoint<double> p{Vec<double>(alg.dim_v()), Vec<double>(alg.dim_z())};
    for (int i = 0; i < alg.dim_v(); ++i) p.x(i) = nd(rng);
    for (int k = 0; k < alg.dim_z(); ++k) p.z(k) = nd(rng);
    const NPoint<double> pinv = inverse_n(p);
    std::vector<double> closed(alg.n() + 1), ref(alg.n() + 1);
    double scale = 0.0;
    for (int j = 1; j <= alg.n(); ++j) {
      closed[j] = m.r[j](p);
      ref[j] = left_invariant_derivative_n(alg, j, hq, pinv) / Q;
      scale = std::max(scale, std::abs(ref[j]));
    }
    for (int j = 1; j <= alg.n(); ++j) {
      const double err = std::abs(closed[j] - ref[j]) / scale;
      rep.max_rel_err = std::max(rep.max_rel_err, err);
      if (j > alg.dim_v()) rep.max_rel_err_central = std::max(rep.max_rel_err_central, err);
    }
  }
  return rep;
}

double leading_coeff_check(int u, int v, double X) {
  if (!(X > 2.0)) throw std::domain_error("leading_coeff_check needs X > 2");
  const double val = std::pow(2.0, -v) * std::sqrt(std::numbers::pi) * derived_phi0(u, v, X, 0)[0];
  return val * std::pow(X, v + 2 * u + 1) * std::log(X) / (gamma_fn(0.5 * (v + 2)) * gamma_fn(0.5 * (v + 2 * u + 1)));
}

BinomialSum binomial_constant(int dim_v, int dim_z, int terms) {
  if (terms < 100) throw std::invalid_argument("binomial_constant needs at least 100 terms");
  const double b = 0.5 * dim_v + dim_z;
  const double sqpi = std::sqrt(std::numbers::pi);
  BinomialSum out;
  out.terms = terms;
  // binom(k - 1/2, k) = Gamma(k + 1/2) / (sqrt(pi) k!).
  double c = 1.0;
  for (int k = 0; k < terms; ++k) {
    out.partial += c / (2.0 * k + b);
    c *= (k + 0.5) / (k + 1.0);
  }
  // Gamma(x + 1/2) / Gamma(x + 1) = x^{-1/2} (1 - 1/8x + 1/128x^2 + 5/1024x^3 - 21/32768x^4 + ...).
  auto a = [&](double x) {
    const double y = 1.0 / x;
    const double ratio = 1.0 + y * (-1.0 / 8 + y * (1.0 / 128 + y * (5.0 / 1024 - y * 21.0 / 32768)));
    return ratio / (std::sqrt(x) * sqpi * (2.0 * x + b));
  };
  const double K = terms;
  // x = K / s^2 maps [K, inf) to (0, 1] with a smooth integrand.
  auto g = [&](double s) { return s == 0.0 ? 1.0 / (std::sqrt(K) * sqpi) : a(K / (s * s)) * 2.0 * K / (s * s * s); };
  QuadSpec spec;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-300;
  const double integral = integrate(g, 0.0, 1.0, spec).value;
  const double h = 1.0;
  const double d1 = (a(K + h) - a(K - h)) / (2.0 * h);
  const double d3 = (a(K + 2 * h) - 2 * a(K + h) + 2 * a(K - h) - a(K - 2 * h)) / (2.0 * h * h * h);
  out.tail = integral + 0.5 * a(K) - d1 / 12.0 + d3 / 720.0;
  out.value = out.partial + out.tail;
  out.closed_form = sqpi * gamma_fn(0.25 * dim_v + 0.5 * dim_z) / (2.0 * gamma_fn(0.25 * dim_v + 0.5 * (dim_z + 1)));
  return out;
}

}  // namespace drkit
