#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "drkit/htype_group.hpp"
#include "drkit/quadrature.hpp"

namespace drkit {

template <typename Scalar>
struct SPoint {
  Vec<Scalar> x;
  Vec<Scalar> z;
  Scalar a;
};

template <typename Scalar>
SPoint<Scalar> identity_s(const HTypeAlgebra<Scalar>& alg) {
  return {Vec<Scalar>::Zero(alg.dim_v()), Vec<Scalar>::Zero(alg.dim_z()), Scalar(1)};
}

template <typename Scalar>
void check_point(const HTypeAlgebra<Scalar>& alg, const SPoint<Scalar>& p) {
  if (p.x.size() != alg.dim_v() || p.z.size() != alg.dim_z()) throw std::invalid_argument("point dimension mismatch");
  if (!(p.a > Scalar(0))) throw std::invalid_argument("point needs a > 0");
}

// (x, z, a) . (x', z', a') = ((x, z) . delta_a(x', z'), a a').
template <typename Scalar>
SPoint<Scalar> compose_s(const HTypeAlgebra<Scalar>& alg, const SPoint<Scalar>& p, const SPoint<Scalar>& q) {
  check_point(alg, p);
  check_point(alg, q);
  using std::sqrt;
  const Scalar ra = sqrt(p.a);
  const Vec<Scalar> xq = ra * q.x;
  return {p.x + xq, p.z + p.a * q.z + Scalar(0.5) * alg.bracket(p.x, xq), p.a * q.a};
}

template <typename Scalar>
SPoint<Scalar> inverse_s(const SPoint<Scalar>& p) {
  using std::sqrt;
  return {-p.x / sqrt(p.a), -p.z / p.a, Scalar(1) / p.a};
}

template <typename Scalar>
Scalar modular_fn(const HTypeAlgebra<Scalar>& alg, const SPoint<Scalar>& p) {
  using std::pow;
  return pow(p.a, -alg.Q());
}

// sinh^2(r/2) in the reduced coordinates (|x|, |z|, u = log a), overflow-safe in u.
inline double sinh2_half_distance(double rho_x, double rho_z, double u) {
  const double q = 0.25 * rho_x * rho_x;
  const double sh = std::sinh(0.5 * u);
  const double e = std::exp(-u);
  return sh * sh + q * std::cosh(0.5 * u) * std::exp(-0.5 * u) + 0.25 * e * (q * q + rho_z * rho_z);
}

inline double reduced_distance(double rho_x, double rho_z, double u) {
  return 2.0 * std::asinh(std::sqrt(sinh2_half_distance(rho_x, rho_z, u)));
}

inline double distance_s(const HTypeAlgebra<double>& alg, const SPoint<double>& p) {
  check_point(alg, p);
  return reduced_distance(p.x.norm(), p.z.norm(), std::log(p.a));
}

// cosh^2(|p|/2) = ((1 + a + |x|^2/4)^2 + |z|^2) / (4a).
inline double cosh2_half_distance(const SPoint<double>& p) {
  const double s = 1.0 + p.a + 0.25 * p.x.squaredNorm();
  return (s * s + p.z.squaredNorm()) / (4.0 * p.a);
}

// X_0, ..., X_n applied to cosh^2(|p|/2).
inline Vec<double> grad_cosh2(const HTypeAlgebra<double>& alg, const SPoint<double>& p) {
  check_point(alg, p);
  const int dv = alg.dim_v(), dz = alg.dim_z();
  Vec<double> g(1 + dv + dz);
  const double s = 1.0 + p.a + 0.25 * p.x.squaredNorm();
  g(0) = -cosh2_half_distance(p) + 0.5 * s;
  const double ra = std::sqrt(p.a);
  for (int j = 0; j < dv; ++j) g(1 + j) = (s * p.x(j) + alg.bracket_ej_dot(p.x, j, p.z)) / (4.0 * ra);
  for (int k = 0; k < dz; ++k) g(1 + dv + k) = 0.5 * p.z(k);
  return g;
}

// p . exp(s X_j) for the frame X_0 = a d_a, X_j (j <= dv), X_{dv+k}.
inline SPoint<double> flow_s(const HTypeAlgebra<double>& alg, int j, const SPoint<double>& p, double s) {
  SPoint<double> q = p;
  if (j == 0) {
    q.a = p.a * std::exp(s);
  } else if (j <= alg.dim_v()) {
    const double ra = std::sqrt(p.a);
    q.x(j - 1) += ra * s;
    for (int k = 0; k < alg.dim_z(); ++k) q.z(k) += 0.5 * ra * s * alg.slice(k).col(j - 1).dot(p.x);
  } else {
    q.z(j - 1 - alg.dim_v()) += p.a * s;
  }
  return q;
}

template <class F>
double left_invariant_derivative_s(const HTypeAlgebra<double>& alg, int j, F&& f, const SPoint<double>& p,
                                   double step = -1.0) {
  if (j < 0 || j > alg.n()) throw std::invalid_argument("field index out of range");
  check_point(alg, p);
  if (step <= 0) step = 1e-3;
  return richardson_derivative([&](double s) { return f(flow_s(alg, j, p, s)); }, step);
}

// Region in reduced coordinates: |x| <= x_max, |z| <= z_max, u_min <= log a <= u_max.
struct HaarRegion {
  double x_max = std::numeric_limits<double>::infinity();
  double z_max = std::numeric_limits<double>::infinity();
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();
  // Distances where the integrand may fail to be smooth.
  std::vector<double> radial_breaks;
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
};

struct HaarResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Surface area of the unit sphere in R^d; 2 for d = 1.
double sphere_area(int d);

namespace detail {

// Integral over [lo, hi] split at the given interior points.
template <class G>
QuadResult integrate_split(G& g, double lo, double hi, std::vector<double> cuts, const QuadSpec& spec) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  QuadResult out;
  double prev = lo;
  for (double c : cuts) {
    if (c <= prev || c > hi) continue;
    const QuadResult r = integrate(g, prev, c, spec);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
    prev = c;
  }
  return out;
}

// Integral over [lo, hi] for lo >= 0 with hi possibly infinite; beyond max(lo, 1) in v = log(rho) chunks.
template <class G>
QuadResult integrate_radial(G& g, double lo, double hi, const std::vector<double>& cuts, const QuadSpec& spec) {
  const double pivot = std::max(lo, 1.0);
  QuadResult out;
  if (pivot > lo) out = integrate_split(g, lo, std::min(pivot, hi), cuts, spec);
  if (hi <= pivot) return out;
  auto h = [&](double v) {
    const double rho = std::exp(v);
    return rho * g(rho);
  };
  std::vector<double> vcuts;
  for (double c : cuts)
    if (c > pivot) vcuts.push_back(std::log(c));
  const double vhi = std::log(hi);
  double v0 = std::log(pivot);
  while (v0 < vhi) {
    const double v1 = std::min(v0 + 4.0, vhi);
    const QuadResult r = integrate_split(h, v0, v1, vcuts, spec);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
    v0 = v1;
    const double small = std::abs(r.value) <= spec.rel_tol * std::abs(out.value) + spec.abs_tol;
    if (std::isinf(hi) && small && (out.value != 0.0 || v0 > 60.0)) break;
  }
  return out;
}

// Integral over [lo, hi] on the real line, chunked outward from [-1, 1] when a bound is infinite.
template <class G>
QuadResult integrate_line(G& g, double lo, double hi, const std::vector<double>& cuts, const QuadSpec& spec) {
  if (std::isfinite(lo) && std::isfinite(hi)) return integrate_split(g, lo, hi, cuts, spec);
  const double c_lo = std::isfinite(lo) ? lo : std::min(-1.0, hi - 2.0);
  const double c_hi = std::isfinite(hi) ? hi : std::max(1.0, lo + 2.0);
  QuadResult out = integrate_split(g, c_lo, c_hi, cuts, spec);
  auto extend = [&](double start, double dir) {
    double s = start;
    for (int chunk = 0; chunk < 200; ++chunk) {
      const double e = s + 4.0 * dir;
      const QuadResult r = dir > 0 ? integrate_split(g, s, e, cuts, spec) : integrate_split(g, e, s, cuts, spec);
      out.value += r.value;
      out.error += r.error;
      out.converged = out.converged && r.converged;
      s = e;
      const bool small = std::abs(r.value) <= spec.rel_tol * std::abs(out.value) + spec.abs_tol;
      if (small && (out.value != 0.0 || std::abs(s) > 60.0)) break;
    }
  };
  if (!std::isfinite(hi)) extend(c_hi, 1.0);
  if (!std::isfinite(lo)) extend(c_lo, -1.0);
  return out;
}

}  // namespace detail

// Integral of f(rho_x, rho_z, u) against the right Haar measure over the region,
// for integrands depending only on |x|, |z| and u = log a.
template <class F>
HaarResult integrate_haar_reduced(const HTypeAlgebra<double>& alg, F&& f, const HaarRegion& region) {
  const int dv = alg.dim_v(), dz = alg.dim_z();
  const double cv = sphere_area(dv), cz = sphere_area(dz);
  QuadSpec outer;
  outer.rel_tol = region.rel_tol;
  outer.abs_tol = region.abs_tol;
  const QuadSpec middle = outer, inner = outer;
  bool converged = true;
  const std::vector<double>& rb = region.radial_breaks;

  auto over_x = [&](double rz, double u) {
    const double a = std::exp(u);
    std::vector<double> cuts;
    const double base = 1.0 + a;
    for (double R : rb) {
      const double c = std::cosh(0.5 * R);
      const double disc = 4.0 * a * c * c - rz * rz;
      if (disc <= 0.0) continue;
      const double q = std::sqrt(disc) - base;
      if (q > 0.0) cuts.push_back(2.0 * std::sqrt(q));
    }
    auto g = [&](double rx) { return f(rx, rz, u) * std::pow(rx, dv - 1); };
    const QuadResult r = detail::integrate_radial(g, 0.0, region.x_max, cuts, inner);
    converged = converged && r.converged;
    return r.value;
  };
  auto over_z = [&](double u) {
    std::vector<double> cuts;
    const double sh = std::sinh(0.5 * u);
    for (double R : rb) {
      const double s = std::sinh(0.5 * R);
      const double v = 4.0 * std::exp(u) * (s * s - sh * sh);
      if (v > 0.0) cuts.push_back(std::sqrt(v));
    }
    auto g = [&](double rz) { return over_x(rz, u) * std::pow(rz, dz - 1); };
    const QuadResult r = detail::integrate_radial(g, 0.0, region.z_max, cuts, middle);
    converged = converged && r.converged;
    return r.value;
  };
  std::vector<double> ucuts;
  for (double R : rb) {
    ucuts.push_back(R);
    ucuts.push_back(-R);
  }
  if (0.0 > region.u_min && 0.0 < region.u_max) ucuts.push_back(0.0);
  const QuadResult r = detail::integrate_line(over_z, region.u_min, region.u_max, ucuts, outer);
  return {cv * cz * r.value, cv * cz * r.error, converged && r.converged};
}

// Reduced-path integral of f : SPoint -> R, evaluated at (|x| e_1, |z| e_1, a).
template <class F>
HaarResult integrate_haar(const HTypeAlgebra<double>& alg, F&& f, const HaarRegion& region) {
  SPoint<double> p = identity_s(alg);
  auto g = [&](double rx, double rz, double u) {
    p.x.setZero();
    p.z.setZero();
    p.x(0) = rx;
    p.z(0) = rz;
    p.a = std::exp(u);
    return f(p);
  };
  return integrate_haar_reduced(alg, g, region);
}

// Full-coordinate integral over a finite region, for dv = 2, dz = 1 (x in polar coordinates).
HaarResult integrate_haar_full(const HTypeAlgebra<double>& alg, const std::function<double(const SPoint<double>&)>& f,
                               const HaarRegion& region);

struct WeightSpec {
  double b = 0.0;
  double c = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  double gamma_tilde = 0.0;
};

enum class DensityVariant { full, minus, plus, zero };

// r^{[lo, hi]}: r^lo for r <= 1, r^hi for r >= 1.
inline double bracket_power(double r, double lo, double hi) { return std::pow(r, r <= 1.0 ? lo : hi); }

// w(x, z, a) = a^s |log a|^{[gamma, gamma_tilde]} |x|^b |z|^c.
double weight_value(const WeightSpec& ws, double rho_x, double rho_z, double u);

double phi_density(const WeightSpec& ws, const HTypeAlgebra<double>& alg, DensityVariant variant, double r);

// The a-range {a <= e}, {a >= 1/e} or {1/e <= a <= e} attached to a variant.
void variant_u_range(DensityVariant variant, double& u_min, double& u_max);

struct RadialProfile {
  std::string name;
  std::function<double(double)> F;
  std::vector<double> breaks;
};

struct RatioReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
  std::vector<double> lhs;
  std::vector<double> rhs;
  bool converged = true;
};

// Weight as a function of (|x|, |z|, u) and the matching one-variable density.
struct RadialComparison {
  std::function<double(double, double, double)> weight;
  std::function<double(double)> density;
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();
};

RatioReport radial_ratio_test(const HTypeAlgebra<double>& alg, const RadialComparison& cmp,
                              const std::vector<RadialProfile>& family, double rel_tol = 1e-6);

RatioReport radial_ratio_test(const WeightSpec& ws, const HTypeAlgebra<double>& alg, DensityVariant variant,
                              const std::vector<RadialProfile>& family, double rel_tol = 1e-6);

struct NamedComparison {
  std::string name;
  RadialComparison cmp;
};

// The four consequences of the density estimates with explicit weights and densities
// r^{[n+1, 0]} e^{kappa r}: gradient-type weight on S, the same on {a <= e}, and |1 - 1/a| (1 + a + |x|^2/4)
// on {1/e <= a <= e} and on S.
std::vector<NamedComparison> radial_consequence_comparisons(const HTypeAlgebra<double>& alg);

// chi_[0,1] and e^{-r^2/sigma} for sigma in {0.25, 1, 4, 16}.
std::vector<RadialProfile> standard_profile_family();

}  // namespace drkit
