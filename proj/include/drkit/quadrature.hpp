#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace drkit {

enum class Substitution { none, sqrt_endpoint, exp_halfline };

struct QuadSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  Substitution substitution = Substitution::none;
  // Range of v for t = lo + e^v on a half-line.
  double exp_vmin = -45.0;
  double exp_vmax = 45.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

namespace detail {

struct GKInterval {
  double a, b, value, error;
};

inline constexpr double kGKNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGKWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Gauss-Kronrod 7/15 pair on [a, b] with the QUADPACK error scaling.
template <class F>
GKInterval gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kGKNodes[j];
    fv[j] = f(c - dx);
    fv[14 - j] = f(c + dx);
  }
  double k = kGKWeights[7] * fv[7];
  double g = kGWeights[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    k += kGKWeights[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) g += kGWeights[j / 2] * (fv[j] + fv[14 - j]);
  }
  const double mean = 0.5 * k;
  double abs_sum = kGKWeights[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) abs_sum += kGKWeights[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
  abs_sum *= std::abs(h);
  double asc = kGKWeights[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    asc += kGKWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  asc *= std::abs(h);
  double err = std::abs((k - g) * h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * abs_sum);
  if (!std::isfinite(k)) throw std::domain_error("non-finite integrand value");
  return {a, b, k * h, err};
}

template <class F>
QuadResult adaptive(F& f, double a, double b, const QuadSpec& spec) {
  auto by_error = [](const GKInterval& x, const GKInterval& y) { return x.error < y.error; };
  std::vector<GKInterval> heap;
  heap.reserve(64);
  heap.push_back(gk15(f, a, b));
  double total = heap[0].value, err = heap[0].error;
  bool converged = true;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const GKInterval w = heap.back();
    heap.pop_back();
    const double m = 0.5 * (w.a + w.b);
    if (!(m > w.a && m < w.b)) {
      heap.push_back(w);
      converged = false;
      break;
    }
    GKInterval l = gk15(f, w.a, m), r = gk15(f, m, w.b);
    total += l.value + r.value - w.value;
    err += l.error + r.error - w.error;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), by_error);
    if (heap.size() % 64 == 0) {
      total = 0.0;
      err = 0.0;
      for (const auto& x : heap) {
        total += x.value;
        err += x.error;
      }
    }
  }
  total = 0.0;
  err = 0.0;
  for (const auto& x : heap) {
    total += x.value;
    err += x.error;
  }
  return {total, err, static_cast<int>(heap.size()), converged};
}

}  // namespace detail

// Adaptive integral of f over [lo, hi]; hi may be +infinity.
template <class F>
QuadResult integrate(F&& f, double lo, double hi, const QuadSpec& spec = {}) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
    throw std::invalid_argument("invalid quadrature spec");
  if (!(hi >= lo)) throw std::invalid_argument("integration bounds out of order");
  if (hi == lo) return {};
  const bool infinite = std::isinf(hi);
  switch (spec.substitution) {
    case Substitution::none: {
      if (!infinite) return detail::adaptive(f, lo, hi, spec);
      auto g = [&](double s) {
        const double d = 1.0 - s;
        return f(lo + s / d) / (d * d);
      };
      return detail::adaptive(g, 0.0, 1.0 - 1e-15, spec);
    }
    case Substitution::sqrt_endpoint: {
      if (!infinite) {
        auto g = [&](double u) { return 2.0 * u * f(lo + u * u); };
        return detail::adaptive(g, 0.0, std::sqrt(hi - lo), spec);
      }
      auto g = [&](double s) {
        const double d = 1.0 - s, u = s / d;
        return 2.0 * u * f(lo + u * u) / (d * d);
      };
      return detail::adaptive(g, 0.0, 1.0 - 1e-15, spec);
    }
    case Substitution::exp_halfline: {
      const double vmax = infinite ? spec.exp_vmax : std::log(hi - lo);
      if (!(vmax > spec.exp_vmin)) return {};
      auto g = [&](double v) {
        const double e = std::exp(v);
        return e * f(lo + e);
      };
      return detail::adaptive(g, spec.exp_vmin, vmax, spec);
    }
  }
  throw std::invalid_argument("unknown substitution");
}

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Generalized Gauss-Laguerre rule for the weight t^alpha e^{-t} on (0, inf).
std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n, double alpha);

}  // namespace drkit
