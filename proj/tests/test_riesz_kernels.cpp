#include <numbers>
#include <random>

#include "doctest.h"
#include "drkit/riesz_kernels.hpp"
#include "drkit/specfun.hpp"

using namespace drkit;

TEST_CASE("phi_0") {
  // 2 / (r sinh(r/2)) at r = 1.
  CHECK(phi0(std::cosh(0.5), 0)[0] == doctest::Approx(3.838069502669887).epsilon(1e-14));
  const double X = std::exp(20.0);
  CHECK(phi0(X, 0)[0] * X * std::log(X) == doctest::Approx(1.0).epsilon(0.06));
  for (double x : {1.2, 2.0, 7.5}) {
    const double h = 1e-5 * x;
    const double fd = (phi0(x + h, 0)[0] - phi0(x - h, 0)[0]) / (2.0 * h);
    CHECK(phi0(x, 1)[1] == doctest::Approx(fd).epsilon(1e-8));
  }
  CHECK_THROWS_AS(phi0(1.0, 0), std::domain_error);
}

TEST_CASE("Phi asymptotics") {
  double err10 = 0.0, err20 = 0.0;
  for (double L : {10.0, 20.0}) {
    const double err = std::abs(phi_big_normalized(2, 1, std::exp(L)) - 1.0);
    CHECK(err <= 2.0 / L);
    (L == 10.0 ? err10 : err20) = err;
  }
  CHECK(err20 < err10);
  CHECK(phi_limit_constant(4, 2) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
  const double e10 = std::abs(phi_big_normalized(4, 2, std::exp(10.0)) / phi_limit_constant(4, 2) - 1.0);
  const double e20 = std::abs(phi_big_normalized(4, 2, std::exp(20.0)) / phi_limit_constant(4, 2) - 1.0);
  CHECK(e10 <= 2.0 / 10.0);
  CHECK(e20 < e10);
}

TEST_CASE("Phi is positive and decreasing") {
  for (auto [dv, dz] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{4, 3}}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double X : {1.1, 1.5, 3.0, 10.0, 100.0}) {
      const double v = phi_big(dv, dz, X);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("derivation identity between centre dimensions") {
  for (auto [dv, dz] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{4, 3}})
    for (double X : {1.5, 3.0, 10.0}) {
      const Jet<double> J = phi_big_jet(dv, dz, X, 1);
      CHECK(-J[1] / (2.0 * X) == doctest::Approx(phi_big(dv, dz + 2, X)).epsilon(1e-8));
    }
}

TEST_CASE("leading coefficients") {
  CHECK(leading_coeff_check(0, 0, std::exp(10.0)) == doctest::Approx(1.0).epsilon(0.2));
  CHECK(leading_coeff_check(1, 1, std::exp(15.0)) == doctest::Approx(1.0).epsilon(0.2));
  for (auto [u, v] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{2, 0}})
    CHECK(std::abs(leading_coeff_check(u, v, std::exp(20.0)) - 1.0) <
          std::abs(leading_coeff_check(u, v, std::exp(10.0)) - 1.0));
}

TEST_CASE("subordination oracle") {
  const auto h = heisenberg<double>(1);
  for (double r : {1.0, 2.0, 5.0}) {
    const double k = phi_constant(2, 1) * phi_big(2, 1, std::cosh(0.5 * r));
    CHECK(subordinated_invsqrt(h, r) == doctest::Approx(k).epsilon(1e-4));
  }
}

TEST_CASE("kernel of Delta^{-1/2}") {
  const auto h = heisenberg<double>(1);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  for (int s = 0; s < 10; ++s) {
    SPoint<double> p{Vec<double>(2), Vec<double>(1), std::exp(nd(rng))};
    p.x << nd(rng), nd(rng);
    p.z << nd(rng);
    const double k = kernel_invsqrt(h, p);
    CHECK(k > 0.0);
    const SPoint<double> q = inverse_s(p);
    const double sym = k * std::pow(p.a, 0.5 * h.Q()), sym_inv = kernel_invsqrt(h, q) * std::pow(q.a, 0.5 * h.Q());
    CHECK(sym == doctest::Approx(sym_inv).epsilon(1e-12));
  }
  CHECK_THROWS_AS(kernel_invsqrt(h, identity_s(h)), std::domain_error);
}

TEST_CASE("Riesz kernels") {
  const auto h = heisenberg<double>(1);
  SPoint<double> p = identity_s(h);
  p.z << 1.5;
  p.a = 2.0;
  const double C = phi_constant(2, 1);
  const double r = distance_s(h, p);
  const double expect = -0.5 * C * std::pow(2.0, -1.0) * 1.5 * phi_big(2, 3, std::cosh(0.5 * r));
  CHECK(riesz_kernel(h, 3, p) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(riesz_kernel(h, 3, p) < 0.0);
  CHECK(riesz_kernel(h, 1, p) == 0.0);
  CHECK(riesz_kernel(h, 2, p) == 0.0);
  SPoint<double> q = identity_s(h);
  q.x << 0.3, -1.0;
  q.z << 0.2;
  CHECK(riesz_kernel(h, 0, q) == 0.0);
}

TEST_CASE("Riesz kernels are X_j of the Delta^{-1/2} kernel") {
  for (const auto& alg : {heisenberg<double>(1), quaternionic<double>(1)}) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> nd;
    SPoint<double> p{Vec<double>(alg.dim_v()), Vec<double>(alg.dim_z()), std::exp(0.5 * nd(rng))};
    for (int i = 0; i < alg.dim_v(); ++i) p.x(i) = nd(rng);
    for (int k = 0; k < alg.dim_z(); ++k) p.z(k) = nd(rng);
    auto k = [&](const SPoint<double>& q) { return kernel_invsqrt(alg, q); };
    for (int j = 1; j <= alg.n(); ++j)
      CHECK(riesz_kernel(alg, j, p) == doctest::Approx(left_invariant_derivative_s(alg, j, k, p)).epsilon(1e-6));
    // R_0 - R_0^* from X_0 k at p and at p^{-1}.
    const SPoint<double> pinv = inverse_s(p);
    const double x0 = left_invariant_derivative_s(alg, 0, k, p);
    const double x0_adj = modular_fn(alg, p) * left_invariant_derivative_s(alg, 0, k, pinv);
    CHECK(riesz_kernel(alg, 0, p) == doctest::Approx(x0 - x0_adj).epsilon(1e-6));
  }
}

TEST_CASE("main terms") {
  const auto h = heisenberg<double>(1);
  const MainTerms m = main_terms(h);
  NPoint<double> p{Vec<double>::Zero(2), Vec<double>::Zero(1)};
  CHECK(m.H(p) == 1.0);
  CHECK(m.r[0](p) == 1.0);
  p.z << 1.0;
  CHECK(m.r[3](p) == doctest::Approx(0.25).epsilon(1e-15));
  p.z << 0.0;
  p.x << 2.0, 0.0;
  CHECK(m.r[1](p) == doctest::Approx(0.125).epsilon(1e-15));
  const double expect = std::pow(std::numbers::pi, -3.0) * gamma_fn(1.0) * gamma_fn(2.0);
  CHECK(m.constant == doctest::Approx(expect).epsilon(1e-14));
  SPoint<double> s = identity_s(h);
  s.z << 0.5;
  s.a = 0.1;
  CHECK(m.K[3](s) == doctest::Approx(m.r[3]({s.x, s.z}) / std::log(0.1)).epsilon(1e-15));
  s.a = 1.0;
  CHECK(m.K[3](s) == 0.0);
  CHECK(m.K0_tilde(s) == 0.0);
  s.a = 10.0;
  CHECK(m.K[0](s) < 0.0);
}

TEST_CASE("r_j identity") {
  for (const auto& alg : {heisenberg<double>(1), quaternionic<double>(1)}) {
    const RjReport rep = verify_rj_identity(alg, 100, 12);
    CHECK(rep.max_rel_err <= 1e-6);
    CHECK(rep.max_rel_err_central <= 1e-8);
  }
}

TEST_CASE("binomial constant") {
  for (auto [dv, dz] : {std::pair{2, 1}, std::pair{4, 3}}) {
    const BinomialSum b = binomial_constant(dv, dz);
    CHECK(std::abs(b.value - b.closed_form) <= 1e-10);
    CHECK(std::abs(b.partial - b.closed_form) > 1e-3);
  }
  CHECK(binomial_constant(2, 1).closed_form == doctest::Approx(1.0).epsilon(1e-15));
}
