#include <numbers>
#include <random>

#include "doctest.h"
#include "drkit/dr_space.hpp"

using namespace drkit;

namespace {

SPoint<double> random_spoint(const HTypeAlgebra<double>& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  SPoint<double> p{Vec<double>(alg.dim_v()), Vec<double>(alg.dim_z()), std::exp(nd(rng))};
  for (int i = 0; i < alg.dim_v(); ++i) p.x(i) = nd(rng);
  for (int k = 0; k < alg.dim_z(); ++k) p.z(k) = nd(rng);
  return p;
}

double max_diff(const SPoint<double>& p, const SPoint<double>& q) {
  return std::max({(p.x - q.x).cwiseAbs().maxCoeff(), (p.z - q.z).cwiseAbs().maxCoeff(), std::abs(p.a - q.a)});
}

}  // namespace

TEST_CASE("group law on S") {
  const auto h = heisenberg<double>(1);
  SPoint<double> p{Vec<double>(2), Vec<double>(1), 4.0}, q{Vec<double>(2), Vec<double>(1), 1.0};
  p.x << 1, 0;
  p.z << 0;
  q.x << 0, 1;
  q.z << 0;
  const auto r = compose_s(h, p, q);
  CHECK(r.x(0) == 1.0);
  CHECK(r.x(1) == 2.0);
  CHECK(r.z(0) == 1.0);
  CHECK(r.a == 4.0);
  CHECK(max_diff(compose_s(h, identity_s(h), p), p) == 0.0);
  for (const auto& alg : {heisenberg<double>(1), quaternionic<double>(1)}) {
    std::mt19937_64 rng(21);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const auto a = random_spoint(alg, rng), b = random_spoint(alg, rng), c = random_spoint(alg, rng);
      const auto l = compose_s(alg, compose_s(alg, a, b), c), rr = compose_s(alg, a, compose_s(alg, b, c));
      worst = std::max(worst, max_diff(l, rr) / (1.0 + l.x.norm() + l.z.norm() + l.a));
      worst = std::max(worst, max_diff(compose_s(alg, a, inverse_s(a)), identity_s(alg)));
      const double dab = modular_fn(alg, compose_s(alg, a, b)), da = modular_fn(alg, a), db = modular_fn(alg, b);
      worst = std::max(worst, std::abs(dab - da * db) / dab);
      worst = std::max(worst, std::abs(modular_fn(alg, inverse_s(a)) * da - 1.0));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("modular function") {
  const auto h = heisenberg<double>(1);
  SPoint<double> p = identity_s(h);
  p.a = 2.0;
  CHECK(modular_fn(h, p) == doctest::Approx(0.25).epsilon(1e-15));
  p.a = 1.0;
  CHECK(modular_fn(h, p) == 1.0);
}

TEST_CASE("distance") {
  const auto h = heisenberg<double>(1);
  SPoint<double> p = identity_s(h);
  CHECK(distance_s(h, p) == 0.0);
  p.a = std::numbers::e;
  CHECK(distance_s(h, p) == doctest::Approx(1.0).epsilon(1e-14));
  p.a = 1.0;
  p.x << 2.0, 0.0;
  CHECK(distance_s(h, p) == doctest::Approx(1.9248473002384137899910356537).epsilon(1e-13));
  p.x << 1.0, 2.0;
  p.z << 3.0;
  p.a = 0.5;
  CHECK(distance_s(h, p) == doctest::Approx(3.43697751140968282937815004221).epsilon(1e-13));
  for (const auto& alg : {heisenberg<double>(1), quaternionic<double>(1)}) {
    std::mt19937_64 rng(4);
    for (int s = 0; s < 10000; ++s) {
      const auto q = random_spoint(alg, rng);
      const double d = distance_s(alg, q);
      CHECK(d >= std::abs(std::log(q.a)) - 1e-12);
      if (s % 10 == 0) CHECK(std::abs(distance_s(alg, inverse_s(q)) - d) <= 1e-12 * (1.0 + d));
    }
  }
}

TEST_CASE("grad of cosh^2 matches finite differences") {
  for (const auto& alg : {heisenberg<double>(1), quaternionic<double>(1)}) {
    std::mt19937_64 rng(8);
    for (int s = 0; s < 20; ++s) {
      const auto p = random_spoint(alg, rng);
      const Vec<double> g = grad_cosh2(alg, p);
      for (int j = 0; j <= alg.n(); ++j) {
        const double fd = left_invariant_derivative_s(alg, j, [](const SPoint<double>& q) { return cosh2_half_distance(q); }, p);
        CHECK(std::abs(g(j) - fd) <= 1e-6 * (1.0 + std::abs(g(j))));
      }
      CHECK(g(1 + alg.dim_v()) == doctest::Approx(0.5 * p.z(0)));
    }
    SPoint<double> p = identity_s(alg);
    p.a = 3.0;
    CHECK(grad_cosh2(alg, p)(0) == doctest::Approx(-cosh2_half_distance(p) + 2.0));
  }
}

TEST_CASE("derivatives of the modular function") {
  const auto q = quaternionic<double>(1);
  std::mt19937_64 rng(2);
  const auto p = random_spoint(q, rng);
  auto dh = [&](const SPoint<double>& x) { return std::sqrt(modular_fn(q, x)); };
  CHECK(left_invariant_derivative_s(q, 0, dh, p) == doctest::Approx(-q.Q() / 2.0 * dh(p)).epsilon(1e-8));
  for (int j = 1; j <= q.n(); ++j) CHECK(std::abs(left_invariant_derivative_s(q, j, dh, p)) <= 1e-8);
  CHECK(left_invariant_derivative_s(q, 0, [](const SPoint<double>& x) { return x.a; }, p) ==
        doctest::Approx(p.a).epsilon(1e-10));
}

TEST_CASE("Haar integration of factorized integrands") {
  const auto h = heisenberg<double>(1);
  HaarRegion box;
  box.x_max = 1.0;
  box.z_max = 1.0;
  box.u_min = 0.0;
  box.u_max = 1.0;
  const HaarResult r = integrate_haar_reduced(h, [](double, double, double) { return 1.0; }, box);
  CHECK(r.value == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-10));
  for (const auto& alg : {heisenberg<double>(1), quaternionic<double>(1)}) {
    HaarRegion g;
    g.u_min = 0.0;
    g.u_max = 1.0;
    const HaarResult gr = integrate_haar(alg, [](const SPoint<double>& p) {
      return std::exp(-p.x.squaredNorm() - p.z.squaredNorm());
    }, g);
    CHECK(gr.value == doctest::Approx(std::pow(std::numbers::pi, alg.n() / 2.0)).epsilon(1e-7));
  }
}

TEST_CASE("full-coordinate Haar fallback agrees with the reduced path") {
  const auto h = heisenberg<double>(1);
  HaarRegion box;
  box.x_max = 1.5;
  box.z_max = 1.0;
  box.u_min = -0.5;
  box.u_max = 0.7;
  box.rel_tol = 1e-7;
  auto f = [](const SPoint<double>& p) { return std::exp(-p.x.squaredNorm() - p.z(0) * p.z(0)) * p.a; };
  const HaarResult full = integrate_haar_full(h, f, box);
  const HaarResult red = integrate_haar(h, f, box);
  CHECK(full.value == doctest::Approx(red.value).epsilon(1e-6));
  CHECK_THROWS(integrate_haar_full(quaternionic<double>(1), f, box));
}

TEST_CASE("weighted volume densities") {
  const auto h = heisenberg<double>(1);
  const WeightSpec w0{};
  CHECK(phi_density(w0, h, DensityVariant::full, 2.0) == doctest::Approx(2.0 * std::exp(2.0)));
  CHECK(phi_density(w0, h, DensityVariant::full, 0.5) == doctest::Approx(0.125 * std::exp(0.5)));
  CHECK(phi_density(w0, h, DensityVariant::zero, 3.0) == doctest::Approx(std::exp(3.0)));
  const WeightSpec wm{1.0, 0.0, -0.5, 0.0, 0.0};
  CHECK(phi_density(wm, h, DensityVariant::full, 2.0) == doctest::Approx(std::exp((1.0 + 0.25 + 0.25) * 2.0)));
  CHECK(phi_density(wm, h, DensityVariant::minus, 2.0) == doctest::Approx(std::exp(1.5 * 2.0)));
  CHECK(phi_density(wm, h, DensityVariant::plus, 2.0) == doctest::Approx(std::exp(1.25 * 2.0)));
  CHECK(phi_density(wm, h, DensityVariant::plus, 0.5) == doctest::Approx(std::pow(0.5, 4.0) * std::exp(1.25 * 0.5)));
  CHECK_THROWS(phi_density(w0, h, DensityVariant::full, 0.0));
}

TEST_CASE("radial ratio test on the zero profile") {
  const auto h = heisenberg<double>(1);
  const RatioReport rep = radial_ratio_test(WeightSpec{}, h, DensityVariant::full,
                                            {{"zero", [](double) { return 0.0; }, {}}});
  CHECK(rep.ratios.empty());
  CHECK(rep.lhs[0] == 0.0);
  CHECK(rep.rhs[0] == 0.0);
}

TEST_CASE("radial ratio band for the trivial weight") {
  const auto h = heisenberg<double>(1);
  const RatioReport rep = radial_ratio_test(WeightSpec{}, h, DensityVariant::full, standard_profile_family(), 1e-5);
  CHECK(rep.ratios.size() == 5);
  CHECK(rep.min_ratio > 0.0);
  CHECK(rep.max_ratio / rep.min_ratio <= 10.0);
}

TEST_CASE("weighted consequences: shell ratios saturate at large radius") {
  const auto h = heisenberg<double>(1);
  std::vector<RadialProfile> shells;
  for (double R : {8.0, 12.0, 16.0})
    shells.push_back({"shell", [R](double r) { return r >= R && r <= R + 0.5 ? 1.0 : 0.0; }, {R, R + 0.5}});
  const auto cmps = radial_consequence_comparisons(h);
  CHECK(cmps.size() == 4);
  for (const NamedComparison& nc : cmps) {
    const RatioReport r = radial_ratio_test(h, nc.cmp, shells, 1e-6);
    REQUIRE(r.ratios.size() == 3);
    CHECK(r.converged);
    CHECK(r.ratios[2] / r.ratios[1] == doctest::Approx(1.0).epsilon(0.1));
  }
}
