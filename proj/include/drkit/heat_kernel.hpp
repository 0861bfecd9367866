#pragma once

#include <cmath>
#include <vector>

#include "drkit/dr_space.hpp"
#include "drkit/jet.hpp"

namespace drkit {

// G = delta^{-1/2} h_t at radius r, with y-derivatives for y = cosh(r/2).
// Values are mantissa * exp(log_scale).
struct RadialHeat {
  double log_scale = 0.0;
  double g0 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;

  double value() const { return g0 * std::exp(log_scale); }
  double log_value() const { return std::log(g0) + log_scale; }
  double d_dy() const { return g1 * std::exp(log_scale); }
  double d2_dy2() const { return g2 * std::exp(log_scale); }
  // dG/dr = G_y sinh(r/2) / 2.
  double d_dr(double r) const { return 0.5 * std::sinh(0.5 * r) * d_dy(); }
};

// Jet in w = y - 1 of arccosh(1 + w)^2 at w0.
Jet<double> arccosh_sq_jet(double w0, int order);

// D^q E^p applied to h_t^R, as a jet in w with constant-term scale factored out:
// returns jet J with true value J * exp(-A(w0)/t - log(4 pi t)/2).
Jet<double> derived_real_heat_jet(int p, int q, double t, double w0, int order);

// Evaluation of delta^{-1/2} h_t; derivs in {0, 1, 2} selects how many y-derivatives to compute.
RadialHeat radial_heat_eval(int dim_v, int dim_z, double t, double r, int derivs = 1, double rel_tol = 1e-12);

double radial_heat(const HTypeAlgebra<double>& alg, double t, double r);

double heat_at_point(const HTypeAlgebra<double>& alg, double t, const SPoint<double>& p);

// X_0 h_t, ..., X_n h_t at p.
Vec<double> grad_heat(const HTypeAlgebra<double>& alg, double t, const SPoint<double>& p);

// Tabulated profile of log G and the scores G_y / G, G_yy / G on [0, r_max].
class HeatProfile {
 public:
  HeatProfile(const HTypeAlgebra<double>& alg, double t, double r_max, double step = 0.02);

  double t() const { return t_; }
  double r_max() const { return r_max_; }
  double log_value(double r) const;
  double value(double r) const { return r > r_max_ ? 0.0 : std::exp(log_value(r)); }
  double score1(double r) const;
  double score2(double r) const;

 private:
  double lagrange(const std::vector<double>& v, double r) const;

  double t_, r_max_, step_;
  std::vector<double> logg_, dlogg_, d2logg_, s1_, ds1_, s2_;
};

// |grad h_t| at (|x| e_1, |z| e_1, e^u) from the tabulated profile.
double grad_heat_magnitude(const HTypeAlgebra<double>& alg, const HeatProfile& prof, double rho_x, double rho_z,
                           double u);

enum class L1Kind { kernel, gradient };

struct L1Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Integral of |h_t| or |grad h_t| times exp(eps |x|^2 / 4t) against the right Haar measure.
L1Result weighted_l1(const HTypeAlgebra<double>& alg, double t, double epsilon, L1Kind which, double rel_tol = 1e-6);

// Radius beyond which the weighted integrand is negligible.
double heat_cutoff_radius(double t, double epsilon);

struct ResidualResult {
  double residual = 0.0;
  double dt = 0.0;
  double laplacian = 0.0;
  double value = 0.0;
};

// Normalized |d_t h + Delta h| at p with Delta = -sum X_j^2, by fourth-order differences.
// time_scale evaluates the kernel at time_scale * t, for negative controls.
ResidualResult heat_equation_residual(const HTypeAlgebra<double>& alg, double t, const SPoint<double>& p,
                                      double step = 0.1, double time_scale = 1.0);

// X_j X_k h_t at p from the radial profile and the closed forms for X_j cosh^2(r/2).
double second_derivative_heat(const HTypeAlgebra<double>& alg, const HeatProfile& prof, int j, int k,
                              const SPoint<double>& p);

// Integral of |X_j X_k h_t| over a finite region (dv = 2, dz = 1).
L1Result second_derivative_local_l1(const HTypeAlgebra<double>& alg, double t, const HaarRegion& region, int j,
                                    int k);

// Upper envelopes of the pointwise estimates for G and |G'|.
double heat_envelope(const HTypeAlgebra<double>& alg, double t, double r);
double grad_heat_envelope(const HTypeAlgebra<double>& alg, double t, double r);

}  // namespace drkit
