#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "drkit/dr_space.hpp"
#include "drkit/jet.hpp"

namespace drkit {

// phi_0(X) = 1 / (sqrt(X^2 - 1) arccosh X) as a jet in X.
Jet<double> phi0(double X, int order);

// Dt^u Et^v phi_0 with Dt = -(1 / 2X) d/dX and Et = -d/dX, as a jet in X of the given order.
Jet<double> derived_phi0(int u, int v, double X, int order);

// C_{dv,dz} = 2^{-dv-dz-1} pi^{-(dv+dz+3)/2}.
double phi_constant(int dim_v, int dim_z);

// Phi_{dv,dz} as a jet in X; odd dz by quadrature over Y = X cosh v.
Jet<double> phi_big_jet(int dim_v, int dim_z, double X, int order, double rel_tol = 1e-12);

double phi_big(int dim_v, int dim_z, double X);

// Phi_{dv,dz}(X) X^{dv/2+dz} log X, which tends to Gamma(dv/4+1/2) Gamma(dv/4+dz/2).
double phi_big_normalized(int dim_v, int dim_z, double X);

double phi_limit_constant(int dim_v, int dim_z);

// Kernel of Delta^{-1/2} at p != identity.
double kernel_invsqrt(const HTypeAlgebra<double>& alg, const SPoint<double>& p);

// pi^{-1/2} int_0^infty t^{-1/2} delta^{-1/2} h_t(r) dt by quadrature in log t.
double subordinated_invsqrt(const HTypeAlgebra<double>& alg, double r, double rel_tol = 1e-8);

// Kernel of R_j = X_j Delta^{-1/2} for j >= 1; for j = 0 the kernel of R_0 - R_0^*.
double riesz_kernel(const HTypeAlgebra<double>& alg, int j, const SPoint<double>& p);

// C~_{dv,dz} = 2^{1-dv/2} pi^{-(dv+dz+3)/2} Gamma(dv/4+1/2) Gamma(dv/4+dz/2+1).
double main_term_constant(int dim_v, int dim_z);

// H(x, z) = (1 + |x|^2/4)^2 + |z|^2.
double h_norm(const NPoint<double>& p);

struct MainTerms {
  // r_0, ..., r_n on N.
  std::vector<std::function<double(const NPoint<double>&)>> r;
  std::function<double(const NPoint<double>&)> H;
  // K~_0, K_0 and K_1, ..., K_n on S; K[0] holds K_0.
  std::function<double(const SPoint<double>&)> K0_tilde;
  std::vector<std::function<double(const SPoint<double>&)>> K;
  double constant = 0.0;
};

MainTerms main_terms(const HTypeAlgebra<double>& alg);

struct RjReport {
  double max_rel_err = 0.0;
  double max_rel_err_central = 0.0;
};

// Closed-form r_j against Q^{-1} (X_j^N H^{-Q/2})^* by finite differences at random points.
RjReport verify_rj_identity(const HTypeAlgebra<double>& alg, int samples, std::uint64_t seed);

// [2^{-v} sqrt(pi) Dt^u Et^v phi_0(X)] X^{v+2u+1} log X / [Gamma((v+2)/2) Gamma((v+2u+1)/2)].
double leading_coeff_check(int u, int v, double X);

struct BinomialSum {
  double value = 0.0;
  double closed_form = 0.0;
  double partial = 0.0;
  double tail = 0.0;
  int terms = 0;
};

// sum_k binom(k - 1/2, k) / (2k + dv/2 + dz): partial sum plus Euler-Maclaurin tail.
BinomialSum binomial_constant(int dim_v, int dim_z, int terms = 2000);

}  // namespace drkit
