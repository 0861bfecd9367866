#include "drkit/dr_space.hpp"

#include <numbers>

#include "drkit/specfun.hpp"

namespace drkit {

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere dimension must be positive");
  if (d == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma_fn(0.5 * d);
}

HaarResult integrate_haar_full(const HTypeAlgebra<double>& alg, const std::function<double(const SPoint<double>&)>& f,
                               const HaarRegion& region) {
  if (alg.dim_v() != 2 || alg.dim_z() != 1)
    throw std::invalid_argument("full-coordinate integration supports dv = 2, dz = 1 only");
  if (!std::isfinite(region.x_max) || !std::isfinite(region.z_max) || !std::isfinite(region.u_min) ||
      !std::isfinite(region.u_max))
    throw std::invalid_argument("full-coordinate integration needs a finite region");
  QuadSpec spec;
  spec.rel_tol = region.rel_tol;
  spec.abs_tol = region.abs_tol;
  QuadSpec in1 = spec, in2 = spec, in3 = spec;
  in1.rel_tol *= 0.1;
  in2.rel_tol *= 0.01;
  in3.rel_tol *= 0.001;
  bool converged = true;
  SPoint<double> p = identity_s(alg);
  auto over_theta = [&](double rho, double z, double u) {
    auto g = [&](double th) {
      p.x(0) = rho * std::cos(th);
      p.x(1) = rho * std::sin(th);
      p.z(0) = z;
      p.a = std::exp(u);
      return f(p);
    };
    const QuadResult r = integrate(g, 0.0, 2.0 * std::numbers::pi, in3);
    converged = converged && r.converged;
    return r.value;
  };
  auto over_rho = [&](double z, double u) {
    auto g = [&](double rho) { return rho * over_theta(rho, z, u); };
    const QuadResult r = integrate(g, 0.0, region.x_max, in2);
    converged = converged && r.converged;
    return r.value;
  };
  auto over_z = [&](double u) {
    auto g = [&](double z) { return over_rho(z, u); };
    const QuadResult r = integrate(g, -region.z_max, region.z_max, in1);
    converged = converged && r.converged;
    return r.value;
  };
  const QuadResult r = integrate(over_z, region.u_min, region.u_max, spec);
  return {r.value, r.error, converged && r.converged};
}

double weight_value(const WeightSpec& ws, double rho_x, double rho_z, double u) {
  const double lu = std::abs(u);
  return std::exp(ws.s * u) * bracket_power(lu, ws.gamma, ws.gamma_tilde) * std::pow(rho_x, ws.b) *
         std::pow(rho_z, ws.c);
}

double phi_density(const WeightSpec& ws, const HTypeAlgebra<double>& alg, DensityVariant variant, double r) {
  if (!(r > 0.0)) throw std::domain_error("phi_density requires r > 0");
  const double Q = alg.Q();
  const double beta = ws.b / 4.0 + ws.c / 2.0 + ws.s;
  const double e0 = Q / 2.0 + ws.b / 4.0 + ws.c / 2.0;
  const double lo = alg.n() + ws.b + ws.c + ws.gamma;
  const double gt = ws.gamma_tilde;
  const int sign = std::abs(beta) < 1e-12 ? 0 : (beta > 0.0 ? 1 : -1);
  auto term = [&](double hi, double k) { return bracket_power(r, lo, hi) * std::exp(k * r); };
  switch (variant) {
    case DensityVariant::full:
      return sign == 0 ? term(1.0 + gt, e0) : term(gt, e0 + std::abs(beta));
    case DensityVariant::minus:
      if (sign < 0) return term(gt, Q / 2.0 - ws.s);
      if (sign == 0) return term(1.0 + gt, Q / 2.0 - ws.s);
      return term(0.0, e0);
    case DensityVariant::plus:
      if (sign > 0) return term(gt, Q / 2.0 + ws.b / 2.0 + ws.c + ws.s);
      if (sign == 0) return term(1.0 + gt, e0);
      return term(0.0, e0);
    case DensityVariant::zero:
      return term(0.0, e0);
  }
  throw std::invalid_argument("unknown density variant");
}

void variant_u_range(DensityVariant variant, double& u_min, double& u_max) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (variant) {
    case DensityVariant::full:
      u_min = -inf;
      u_max = inf;
      return;
    case DensityVariant::minus:
      u_min = -inf;
      u_max = 1.0;
      return;
    case DensityVariant::plus:
      u_min = -1.0;
      u_max = inf;
      return;
    case DensityVariant::zero:
      u_min = -1.0;
      u_max = 1.0;
      return;
  }
}

RatioReport radial_ratio_test(const HTypeAlgebra<double>& alg, const RadialComparison& cmp,
                              const std::vector<RadialProfile>& family, double rel_tol) {
  RatioReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;
  const double Q = alg.Q();
  for (const auto& prof : family) {
    HaarRegion region;
    region.u_min = cmp.u_min;
    region.u_max = cmp.u_max;
    region.radial_breaks = prof.breaks;
    region.rel_tol = rel_tol;
    region.abs_tol = 1e-300;
    auto lhs_f = [&](double rx, double rz, double u) {
      const double F = prof.F(reduced_distance(rx, rz, u));
      if (F == 0.0) return 0.0;
      return std::exp(-0.5 * Q * u) * F * cmp.weight(rx, rz, u);
    };
    const HaarResult lhs = integrate_haar_reduced(alg, lhs_f, region);
    QuadSpec spec;
    spec.rel_tol = rel_tol * 0.1;
    spec.abs_tol = 1e-300;
    auto rhs_f = [&](double r) {
      if (!(r > 0.0)) return 0.0;
      const double F = prof.F(r);
      return F == 0.0 ? 0.0 : F * cmp.density(r);
    };
    std::vector<double> cuts = prof.breaks;
    cuts.push_back(1.0);
    const QuadResult rhs = detail::integrate_radial(rhs_f, 0.0, std::numeric_limits<double>::infinity(), cuts, spec);
    rep.converged = rep.converged && lhs.converged && rhs.converged;
    rep.lhs.push_back(lhs.value);
    rep.rhs.push_back(rhs.value);
    if (lhs.value == 0.0 && rhs.value == 0.0) continue;
    const double ratio = lhs.value / rhs.value;
    rep.ratios.push_back(ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  if (rep.ratios.empty()) rep.min_ratio = rep.max_ratio = 0.0;
  return rep;
}

RatioReport radial_ratio_test(const WeightSpec& ws, const HTypeAlgebra<double>& alg, DensityVariant variant,
                              const std::vector<RadialProfile>& family, double rel_tol) {
  RadialComparison cmp;
  cmp.weight = [ws](double rx, double rz, double u) { return weight_value(ws, rx, rz, u); };
  cmp.density = [ws, &alg, variant](double r) { return phi_density(ws, alg, variant, r); };
  variant_u_range(variant, cmp.u_min, cmp.u_max);
  return radial_ratio_test(alg, cmp, family, rel_tol);
}

std::vector<NamedComparison> radial_consequence_comparisons(const HTypeAlgebra<double>& alg) {
  const double Q = alg.Q();
  const int n = alg.n();
  auto density = [n](double kappa) {
    return [n, kappa](double r) { return bracket_power(r, n + 1.0, 0.0) * std::exp(kappa * r); };
  };
  auto grad_full = [](double rx, double rz, double u) {
    const double a = std::exp(u);
    return std::exp(-0.5 * u) * ((1.0 + a + 0.25 * rx * rx) * rx + rx * rz);
  };
  auto grad_lower = [](double rx, double rz, double u) {
    const double a = std::exp(u);
    return std::exp(-0.5 * u) * ((a + 0.25 * rx * rx) * rx + rx * rz);
  };
  auto vertical = [](double rx, double, double u) {
    const double a = std::exp(u);
    return std::abs(-std::expm1(-u)) * (1.0 + a + 0.25 * rx * rx);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return {{"gradient_weight_on_S", {grad_full, density(0.5 * (Q + 2.0)), -inf, inf}},
          {"gradient_weight_a_below_e", {grad_lower, density(0.5 * Q + 0.75), -inf, 1.0}},
          {"vertical_weight_a_near_1", {vertical, density(0.5 * (Q + 1.0)), -1.0, 1.0}},
          {"vertical_weight_on_S", {vertical, density(0.5 * (Q + 2.0)), -inf, inf}}};
}

std::vector<RadialProfile> standard_profile_family() {
  std::vector<RadialProfile> fam;
  fam.push_back({"indicator_unit", [](double r) { return r <= 1.0 ? 1.0 : 0.0; }, {1.0}});
  for (double sigma : {0.25, 1.0, 4.0, 16.0})
    fam.push_back({"gauss_" + std::to_string(sigma), [sigma](double r) { return std::exp(-r * r / sigma); }, {}});
  return fam;
}

}  // namespace drkit
