#pragma once

#include <array>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace drkit {

// Truncated Taylor series f(x0 + e) = sum_k c[k] e^k, k <= order.
template <typename Scalar>
class Jet {
 public:
  static constexpr int kMaxOrder = 16;

  Jet() : order_(0) { c_.fill(Scalar(0)); }

  Jet(int order, Scalar value) : order_(order) {
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order out of range");
    c_.fill(Scalar(0));
    c_[0] = value;
  }

  // The identity function x0 + e.
  static Jet variable(int order, Scalar base) {
    Jet j(order, base);
    if (order >= 1) j.c_[1] = Scalar(1);
    return j;
  }

  int order() const { return order_; }
  Scalar value() const { return c_[0]; }
  Scalar& operator[](int k) { return c_[k]; }
  const Scalar& operator[](int k) const { return c_[k]; }

  // k-th derivative at the base point.
  Scalar derivative(int k) const {
    Scalar f = c_[k];
    for (int i = 2; i <= k; ++i) f *= Scalar(i);
    return f;
  }

  Jet truncated(int order) const {
    if (order > order_) throw std::invalid_argument("cannot raise jet order");
    Jet j(order, c_[0]);
    for (int k = 1; k <= order; ++k) j.c_[k] = c_[k];
    return j;
  }

  Jet& operator+=(const Jet& o) { check(o); for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k]; return *this; }
  Jet& operator-=(const Jet& o) { check(o); for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k]; return *this; }
  Jet& operator+=(Scalar s) { c_[0] += s; return *this; }
  Jet& operator-=(Scalar s) { c_[0] -= s; return *this; }
  Jet& operator*=(Scalar s) { for (int k = 0; k <= order_; ++k) c_[k] *= s; return *this; }
  Jet& operator/=(Scalar s) { for (int k = 0; k <= order_; ++k) c_[k] /= s; return *this; }

  Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }
  Jet& operator/=(const Jet& o) { *this = *this / o; return *this; }

  Jet operator-() const { Jet j = *this; j *= Scalar(-1); return j; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, Scalar s) { return a += s; }
  friend Jet operator+(Scalar s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Scalar s) { return a -= s; }
  friend Jet operator-(Scalar s, const Jet& a) { Jet j = -a; return j += s; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Scalar s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.order_, Scalar(0));
    for (int k = 0; k <= a.order_; ++k) {
      Scalar s(0);
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check(b);
    if (b.c_[0] == Scalar(0)) throw std::domain_error("jet division by zero constant term");
    Jet q(a.order_, Scalar(0));
    for (int k = 0; k <= a.order_; ++k) {
      Scalar s = a.c_[k];
      for (int j = 0; j < k; ++j) s -= q.c_[j] * b.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  friend Jet operator/(Scalar s, const Jet& b) { return Jet(b.order_, s) / b; }

 private:
  void check(const Jet& o) const {
    if (o.order_ != order_) throw std::invalid_argument("jet order mismatch");
  }

  int order_;
  std::array<Scalar, kMaxOrder + 1> c_;
};

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& a) {
  using std::exp;
  Jet<Scalar> e(a.order(), exp(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    Scalar s(0);
    for (int j = 1; j <= k; ++j) s += Scalar(j) * a[j] * e[k - j];
    e[k] = s / Scalar(k);
  }
  return e;
}

template <typename Scalar>
Jet<Scalar> log(const Jet<Scalar>& a) {
  using std::log;
  if (!(a[0] > Scalar(0))) throw std::domain_error("jet log of nonpositive value");
  Jet<Scalar> l(a.order(), log(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    Scalar s = Scalar(k) * a[k];
    for (int j = 1; j < k; ++j) s -= Scalar(j) * l[j] * a[k - j];
    l[k] = s / (Scalar(k) * a[0]);
  }
  return l;
}

template <typename Scalar>
Jet<Scalar> pow(const Jet<Scalar>& a, Scalar p) {
  using std::pow;
  if (!(a[0] > Scalar(0))) throw std::domain_error("jet power of nonpositive value");
  Jet<Scalar> y(a.order(), pow(a[0], p));
  for (int k = 1; k <= a.order(); ++k) {
    Scalar s(0);
    for (int j = 1; j <= k; ++j) s += (p * Scalar(j) - Scalar(k - j)) * a[j] * y[k - j];
    y[k] = s / (Scalar(k) * a[0]);
  }
  return y;
}

template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& a) {
  return pow(a, Scalar(0.5));
}

namespace detail {
template <typename Scalar>
void sinh_cosh(const Jet<Scalar>& a, Jet<Scalar>& s, Jet<Scalar>& c) {
  using std::cosh;
  using std::sinh;
  s = Jet<Scalar>(a.order(), sinh(a[0]));
  c = Jet<Scalar>(a.order(), cosh(a[0]));
  for (int k = 1; k <= a.order(); ++k) {
    Scalar ss(0), cc(0);
    for (int j = 1; j <= k; ++j) {
      ss += Scalar(j) * a[j] * c[k - j];
      cc += Scalar(j) * a[j] * s[k - j];
    }
    s[k] = ss / Scalar(k);
    c[k] = cc / Scalar(k);
  }
}
}  // namespace detail

template <typename Scalar>
Jet<Scalar> sinh(const Jet<Scalar>& a) {
  Jet<Scalar> s, c;
  detail::sinh_cosh(a, s, c);
  return s;
}

template <typename Scalar>
Jet<Scalar> cosh(const Jet<Scalar>& a) {
  Jet<Scalar> s, c;
  detail::sinh_cosh(a, s, c);
  return c;
}

// d/dx of the jet; the result has one order less.
template <typename Scalar>
Jet<Scalar> differentiate(const Jet<Scalar>& f) {
  if (f.order() < 1) throw std::domain_error("jet order exhausted");
  Jet<Scalar> d(f.order() - 1, f[1]);
  for (int k = 1; k <= d.order(); ++k) d[k] = Scalar(k + 1) * f[k + 1];
  return d;
}

// The derivation f -> -f'/g, consuming one order.
template <typename Scalar>
Jet<Scalar> jet_apply_derivation(const Jet<Scalar>& f, const Jet<Scalar>& g) {
  Jet<Scalar> d = differentiate(f);
  if (g.order() < d.order()) throw std::invalid_argument("denominator jet order too low");
  return -(d / g.truncated(d.order()));
}

// Horner evaluation of sum_m coeffs[m] x^m on a jet argument.
template <typename Scalar, typename Range>
Jet<Scalar> polyval(const Range& coeffs, const Jet<Scalar>& x) {
  Jet<Scalar> acc(x.order(), Scalar(0));
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) {
    acc = acc * x;
    acc += *it;
  }
  return acc;
}

}  // namespace drkit
