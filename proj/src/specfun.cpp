#include "drkit/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace drkit {

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn requires x > 0");
  return std::tgamma(x);
}

double laguerre(int ell, double a, double t) {
  if (ell < 0) throw std::invalid_argument("laguerre degree must be nonnegative");
  double prev = 1.0;
  if (ell == 0) return prev;
  double cur = 1.0 + a - t;
  for (int k = 1; k < ell; ++k) {
    const double next = ((2.0 * k + 1.0 + a - t) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_all(int L, double a, double t) {
  if (L < 0) throw std::invalid_argument("laguerre degree must be nonnegative");
  std::vector<double> out(L + 1);
  out[0] = 1.0;
  if (L >= 1) out[1] = 1.0 + a - t;
  for (int k = 1; k < L; ++k)
    out[k + 1] = ((2.0 * k + 1.0 + a - t) * out[k] - (k + a) * out[k - 1]) / (k + 1.0);
  return out;
}

double log_bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k requires x > 0");
  nu = std::abs(nu);
  // Integrand e^{-x cosh t} cosh(nu t) = e^{g(t)} (1 + e^{-2 nu t}) / 2 with concave g.
  auto g = [&](double t) { return -x * std::cosh(t) + nu * t; };
  const double tpeak = std::asinh(nu / x);
  const double gmax = g(tpeak);
  const double drop = std::log(1e18);
  double lo = tpeak, hi = tpeak + 1.0;
  while (g(hi) > gmax - drop) hi += (hi - tpeak);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
    const double m = 0.5 * (lo + hi);
    (g(m) > gmax - drop ? lo : hi) = m;
  }
  const double tmax = hi;
  const double width = 1.0 / std::sqrt(x * std::cosh(tpeak));
  const double h = std::min(0.1, width / 8.0);
  const long n = static_cast<long>(std::ceil(tmax / h));
  const double step = tmax / static_cast<double>(n);
  double sum = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double t = k * step;
    const double v = std::exp(g(t) - gmax) * 0.5 * (1.0 + std::exp(-2.0 * nu * t));
    sum += (k == 0 ? 0.5 : 1.0) * v;
  }
  return gmax + std::log(sum * step);
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

ST st_funcs(double u) {
  const double a = std::abs(u);
  if (a < 1e-4) {
    const double u2 = u * u;
    return {1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0, 1.0 + u2 / 3.0 - u2 * u2 / 45.0};
  }
  const double e2 = std::exp(-2.0 * a);
  const double S = 2.0 * a * std::exp(-a) / (-std::expm1(-2.0 * a));
  const double T = a * (1.0 + e2) / (-std::expm1(-2.0 * a));
  return {S, T};
}

std::pair<Jet<double>, Jet<double>> st_jets(double u0, int order) {
  const bool flip = u0 < 0.0;
  const double a = std::abs(u0);
  const Jet<double> w = Jet<double>::variable(order, a);
  Jet<double> S, T;
  if (a < 0.5) {
    // sinh(w)/w and cosh(w) as even power series in w.
    std::vector<double> sinhc(44, 0.0), coshc(44, 0.0);
    double f = 1.0;
    for (int k = 0; k < 22; ++k) {
      coshc[2 * k] = 1.0 / f;
      f *= (2.0 * k + 1.0);
      sinhc[2 * k] = 1.0 / f;
      f *= (2.0 * k + 2.0);
    }
    const Jet<double> sc = polyval(sinhc, w);
    S = 1.0 / sc;
    T = polyval(coshc, w) / sc;
  } else {
    const Jet<double> e1 = exp(-w);
    const Jet<double> e2 = e1 * e1;
    const Jet<double> den = 1.0 - e2;
    S = 2.0 * w * e1 / den;
    T = w * (1.0 + e2) / den;
  }
  if (flip) {
    for (int k = 1; k <= order; k += 2) {
      S[k] = -S[k];
      T[k] = -T[k];
    }
  }
  return {S, T};
}

}  // namespace drkit
