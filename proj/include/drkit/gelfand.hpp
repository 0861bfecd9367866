#pragma once

#include <functional>
#include <vector>

#include "drkit/htype_group.hpp"

namespace drkit {

struct GelfandPoint {
  Vec<double> mu;
  int ell = 0;
  // lambda = (2 ell + dv/2) |mu|.
  double lambda(int dim_v) const;
};

// Profile f(|x|, |z|) of a function on N radial in x and in z.
using NRadialProfile = std::function<double(double, double)>;

struct GelfandOptions {
  // Relative tolerance of the inner z-transform.
  double z_rel_tol = 1e-10;
  // Gauss-Legendre points per panel of the |x| integral.
  int panel_order = 16;
};

// G f(mu, ell) for ell = 0..L at |mu| = mu_abs; real because f is even in z. Requires dz in {1, 3}.
std::vector<double> gelfand_radial_all(const HTypeAlgebra<double>& alg, const NRadialProfile& f, double mu_abs, int L,
                                       const GelfandOptions& opt = {});

double gelfand_radial(const HTypeAlgebra<double>& alg, const NRadialProfile& f, const GelfandPoint& gp,
                      const GelfandOptions& opt = {});

struct PlancherelReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_truncated = 0.0;
  double tail = 0.0;
  double rel_err = 0.0;
  bool inconclusive = false;
};

// ||f||_2^2 against (2 pi)^{-Q} int sum_{ell <= L_max} |G f|^2 binom(ell + dv/2 - 1, ell) |mu|^{dv/2} d mu.
// mu_grid holds the panel breakpoints of the |mu| integral, starting at 0. The tail beyond L_max is
// extrapolated geometrically from the last two terms; inconclusive when it exceeds tail_tol of rhs
// or when nodes without a decaying ratio carry more than tail_tol of rhs.
PlancherelReport plancherel_check(const HTypeAlgebra<double>& alg, const NRadialProfile& f, int L_max,
                                  const std::vector<double>& mu_grid, double tail_tol = 0.1);

// Uniform |mu| breakpoints 0, h, 2h, ..., mu_max.
std::vector<double> uniform_mu_grid(double mu_max, int panels);

// Psi_s = H^{-(Q+s)/2} as a radial profile.
NRadialProfile psi_profile(const HTypeAlgebra<double>& alg, double s);

// d^k/d lambda^k Xi_s(lambda, mu), k >= 0, with (-t)^k inserted in the t-integral.
double xi_s(const HTypeAlgebra<double>& alg, double s, double lambda, double mu_abs, int k = 0);
double xi_s(const HTypeAlgebra<double>& alg, double s, double lambda, const Vec<double>& mu, int k = 0);

struct XiAverages {
  // int_{-1}^{1} d_lambda Xi_s(lambda + 2 v |mu|) dv.
  double xi1 = 0.0;
  // int_{-1}^{1} d_lambda^2 Xi_s(lambda + 2 v |mu|) (1 - |v|) dv.
  double xi2 = 0.0;
  // Change under doubling the Gauss-Legendre order relative to |xi1| + |xi2|; 0 when not checked.
  double doubling_change = 0.0;
};

// Gauss-Legendre of the given order on each half of [-1, 1].
XiAverages xi_averages(const HTypeAlgebra<double>& alg, double s, double lambda, double mu_abs, int order = 32,
                       bool self_check = true);

// The same averages with the v-integral done inside the t-integral in closed form.
XiAverages xi_averages_closed(const HTypeAlgebra<double>& alg, double s, double lambda, double mu_abs);

enum class XiMethod { gauss_legendre, closed_form };

// Xi~_s = Xi_s - lambda Xi^(2) - (dv/4) Xi^(1). Requires lambda - 2|mu| + (s+1)|mu| > 0.
double xi_tilde(const HTypeAlgebra<double>& alg, double s, double lambda, double mu_abs,
                XiMethod method = XiMethod::gauss_legendre);

enum class FSymbol { F0, Fv, Fz };

// F0 = Xi~_2, Fv = lambda^{1/2} Xi_0, Fz = lambda Xi_0.
double f_symbol(const HTypeAlgebra<double>& alg, FSymbol which, double lambda, double mu_abs,
                XiMethod method = XiMethod::gauss_legendre);

}  // namespace drkit
