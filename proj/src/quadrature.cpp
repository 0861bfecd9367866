#include "drkit/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace drkit {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[n - 1 - i] = t;
    w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n, double alpha) {
  if (n < 1 || !(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre needs n >= 1, alpha > -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    J(k, k) = 2.0 * k + alpha + 1.0;
    if (k + 1 < n) J(k, k + 1) = J(k + 1, k) = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  const double lognorm = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double t = es.eigenvalues()(i);
    // Newton polish on L_n^alpha, then the classical weight formula via L_{n+1}^alpha.
    for (int it = 0; it < 8; ++it) {
      double p0 = 1.0, p1 = 1.0 + alpha - t;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0 + alpha - t) * p1 - (k + alpha) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? 1.0 + alpha - t : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      const double dpn = (n * pn - (n + alpha) * pnm1) / t;
      const double dt = pn / dpn;
      t -= dt;
      if (std::abs(dt) < 1e-15 * t) break;
    }
    double p0 = 1.0, p1 = 1.0 + alpha - t;
    for (int k = 1; k <= n; ++k) {
      const double p2 = ((2.0 * k + 1.0 + alpha - t) * p1 - (k + alpha) * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    x[i] = t;
    w[i] = std::exp(lognorm) * t / ((n + 1.0) * (n + 1.0) * p1 * p1);
  }
  return {x, w};
}

}  // namespace drkit
