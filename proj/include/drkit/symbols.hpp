#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "drkit/gelfand.hpp"

namespace drkit {

// Uniform grid u_k = -U + k h on [-U, U] discretizing L^2(R+, da/a) in u = log a.
struct LogGrid {
  double U = 15.0;
  int N = 301;
  double h() const;
  double u(int k) const;
  // Trapezoid weight of node k divided by h.
  double trapezoid(int k) const;
  void validate() const;
};

struct OperatorMatrix {
  LogGrid grid;
  Eigen::MatrixXd entries;
};

struct A2Weight {
  enum class Kind { flat, power };
  Kind kind = Kind::flat;
  double alpha = 0.0;

  static A2Weight flat();
  // w(e^u) = |u|^alpha with |alpha| < 1.
  static A2Weight power(double alpha);
  double eval(double u) const;
  // Average of w over [a, b].
  double average(double a, double b) const;
  // Estimate of [w]_{A2}: maximum of avg(w) avg(1/w) over symmetric and shifted dyadic intervals.
  double characteristic_estimate() const;
};

enum class MSymbol { M0, Mv, Mz };

// Kernel operator of M_ell(lambda, mu) on the grid; J cutoffs at |u - u'| = 1 get half weight.
OperatorMatrix build_m_operator(const HTypeAlgebra<double>& alg, MSymbol which, double lambda, double mu_abs,
                                const LogGrid& grid);

// F_ell(e^{u_k} lambda, e^{u_k} mu) on the grid nodes.
std::vector<double> symbol_samples(const HTypeAlgebra<double>& alg, MSymbol which, double lambda, double mu_abs,
                                   const LogGrid& grid);

// Weight of each node cell: h times the trapezoid factor times the cell average of w.
std::vector<double> cell_weights(const LogGrid& grid, const A2Weight& w);

struct OpNormResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Norm on the weighted discrete L^2 by power iteration on A^T A with A = D^{1/2} T D^{-1/2}.
OpNormResult op_norm(const OperatorMatrix& T, const A2Weight& w, double tol = 1e-8, int max_iter = 10000);

struct ConePoint {
  double lambda = 0.0;
  double mu = 0.0;
};

// lambda log-spaced on [lam_min, lam_max]; |mu| = (j / (n_mu - 1)) lambda / kappa.
std::vector<ConePoint> cone_grid(double lam_min, double lam_max, int n_lam, int n_mu, double kappa);

// Envelope for lambda^{|alpha|} d^alpha F with c in (0, 1).
double symbol_envelope(FSymbol which, int order, double lambda, double mu_abs, double c = 0.9);

// max over |alpha| = order of |lambda^{|alpha|} d^alpha F(lambda, mu)| by central differences in (lambda, mu_1..mu_dz),
// with mu placed along the first axis.
double symbol_derivative(const HTypeAlgebra<double>& alg, FSymbol which, int order, double lambda, double mu_abs);

struct SweepReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  bool finite = true;
};

SweepReport symbol_derivative_sweep(const HTypeAlgebra<double>& alg, FSymbol which, int order,
                                    const std::vector<ConePoint>& grid, double c = 0.9);

struct HolderReport {
  std::vector<double> separations;
  // Sup over pairs of |F0^alpha(p) - F0^alpha(p')| / |p - p'|^eps per separation.
  std::vector<double> sup_ratio;
};

// Random cone pairs at the given separations for F0^alpha with alpha = (order, 0).
HolderReport holder_check(const HTypeAlgebra<double>& alg, int order, double eps, const std::vector<double>& separations,
                          int pairs, double kappa, std::uint64_t seed);

// Estimate of the R-bound of the family on the discretized L^p (flat trapezoid weights). Includes
// single-member tuples along top singular vectors; signs are enumerated exactly for families of
// at most 12 members.
double r_bound_estimate(const std::vector<OperatorMatrix>& family, double p, int trials, std::uint64_t seed);

// Smooth step 0 on (-inf, a], 1 on [b, inf).
double smooth_step(double x, double a, double b);
// chi_0(s) = 1 for s <= 1, 0 for s >= 2.
double chi0(double s);
// eta(xi) = chi_0(|xi|) - chi_0(2|xi|), supported in 1/2 <= |xi| <= 2.
double dyadic_eta(double xi_norm);
// Bump equal to 1 on [1/2, 2] and supported in [1/4, 3].
double dyadic_chi(double xi_norm);

struct DyadicValues {
  double eta = 0.0;
  double E_re = 0.0;
  double E_im = 0.0;
};

// eta(2^m xi) and E_{k,m}(xi) = chi(2^m xi) e^{i k . 2^m xi}.
DyadicValues dyadic_tools(int m, const std::vector<double>& k, const std::vector<double>& xi);

// sum_{|m| <= m_max} eta(2^m xi).
double dyadic_partition_sum(double xi_norm, int m_max = 40);

// |c_k| for k = 0..k_max of the 2 pi periodization of g supported in (-pi, pi), by the trapezoid rule.
std::vector<double> fourier_coefficients(const std::function<double(double)>& g, int k_max, int points = 4096);

}  // namespace drkit
