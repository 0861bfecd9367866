#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drkit/dr_space.hpp"
#include "drkit/gelfand.hpp"
#include "drkit/heat_kernel.hpp"
#include "drkit/riesz_kernels.hpp"
#include "drkit/symbols.hpp"

using namespace drkit;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records a sub-check; returns ok for chaining.
  bool expect(bool ok, const std::string& what) {
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [fail]");
    pass = pass && ok;
    return ok;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const std::vector<HTypeAlgebra<double>>& models() {
  static const std::vector<HTypeAlgebra<double>> m{heisenberg<double>(1), quaternionic<double>(1)};
  return m;
}

const char* model_label(int i) { return i == 0 ? "heisenberg(1)" : "quaternionic(1)"; }

SPoint<double> random_spoint(const HTypeAlgebra<double>& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  SPoint<double> p{Vec<double>(alg.dim_v()), Vec<double>(alg.dim_z()), std::exp(nd(rng))};
  for (int i = 0; i < alg.dim_v(); ++i) p.x(i) = nd(rng);
  for (int k = 0; k < alg.dim_z(); ++k) p.z(k) = nd(rng);
  return p;
}

double s_diff(const SPoint<double>& p, const SPoint<double>& q) {
  const double scale = 1.0 + p.x.norm() + p.z.norm() + p.a;
  return std::max({(p.x - q.x).cwiseAbs().maxCoeff(), (p.z - q.z).cwiseAbs().maxCoeff(), std::abs(p.a - q.a)}) /
         scale;
}

double n_diff(const NPoint<double>& p, const NPoint<double>& q) {
  const double scale = 1.0 + p.x.norm() + p.z.norm();
  return std::max((p.x - q.x).cwiseAbs().maxCoeff(), (p.z - q.z).cwiseAbs().maxCoeff()) / scale;
}

void c01_htype_identity(Verdict& v) {
  for (int i = 0; i < 2; ++i) {
    const double w = verify_htype(models()[i], 10000, 101 + i).max_violation;
    v.expect(w <= 1e-12, std::string(model_label(i)) + " max violation " + num(w));
  }
}

void c02_group_axioms(Verdict& v) {
  for (int i = 0; i < 2; ++i) {
    const auto& alg = models()[i];
    std::mt19937_64 rng(202 + i);
    double assoc = 0.0, inv = 0.0, dil = 0.0, sym = 0.0, lower = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const auto a = random_spoint(alg, rng), b = random_spoint(alg, rng), c = random_spoint(alg, rng);
      assoc = std::max(assoc, s_diff(compose_s(alg, compose_s(alg, a, b), c), compose_s(alg, a, compose_s(alg, b, c))));
      const NPoint<double> na{a.x, a.z}, nb{b.x, b.z}, nc{c.x, c.z};
      assoc = std::max(assoc, n_diff(compose_n(alg, compose_n(alg, na, nb), nc), compose_n(alg, na, compose_n(alg, nb, nc))));
      inv = std::max(inv, s_diff(compose_s(alg, a, inverse_s(a)), identity_s(alg)));
      inv = std::max(inv, s_diff(compose_s(alg, inverse_s(a), a), identity_s(alg)));
      dil = std::max(dil, n_diff(dilate_n(compose_n(alg, na, nb), c.a), compose_n(alg, dilate_n(na, c.a), dilate_n(nb, c.a))));
      const double d = distance_s(alg, a);
      sym = std::max(sym, rel_diff(distance_s(alg, inverse_s(a)), d));
      lower = std::max(lower, (std::abs(std::log(a.a)) - d) / (1.0 + d));
    }
    const std::string m = model_label(i);
    v.expect(assoc <= 1e-12, m + " associativity " + num(assoc));
    v.expect(inv <= 1e-12, m + " inverse " + num(inv));
    v.expect(dil <= 1e-12, m + " dilation automorphism " + num(dil));
    v.expect(sym <= 1e-12, m + " |p^-1| = |p| " + num(sym));
    v.expect(lower <= 1e-12, m + " |p| >= |log a| excess " + num(std::max(lower, 0.0)));
  }
}

std::vector<SPoint<double>> heat_grid(const HTypeAlgebra<double>& alg) {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> ud(-1.5, 1.5);
  std::vector<SPoint<double>> pts;
  for (int i = 0; i < 50; ++i) {
    SPoint<double> p = identity_s(alg);
    for (int j = 0; j < alg.dim_v(); ++j) p.x(j) = ud(rng);
    for (int k = 0; k < alg.dim_z(); ++k) p.z(k) = ud(rng);
    p.a = std::exp(ud(rng));
    pts.push_back(p);
  }
  return pts;
}

void c03_heat_equation(Verdict& v) {
  const auto& h = models()[0];
  const auto pts = heat_grid(h);
  for (double t : {0.5, 1.0, 2.0}) {
    double worst = 0.0;
    std::vector<double> drops;
    for (const auto& p : pts) {
      const ResidualResult coarse = heat_equation_residual(h, t, p, 0.2);
      const ResidualResult fine = heat_equation_residual(h, t, p, 0.1);
      worst = std::max(worst, fine.residual);
      // Drops are measured only where the coarse residual is above the rounding floor.
      if (coarse.residual > 1e-7) drops.push_back(coarse.residual / fine.residual);
    }
    std::sort(drops.begin(), drops.end());
    const double median = drops.empty() ? 0.0 : drops[drops.size() / 2];
    v.expect(worst <= 1e-3, "t=" + num(t) + " max residual " + num(worst));
    v.expect(drops.size() >= 25 && median >= 8.0 && median <= 32.0,
             "t=" + num(t) + " median drop " + num(median) + " over " + std::to_string(drops.size()) + " points");
  }
}

void c04_mass(Verdict& v) {
  for (double t : {0.25, 1.0, 4.0}) {
    const L1Result m = weighted_l1(models()[0], t, 0.0, L1Kind::kernel, 1e-6);
    v.expect(m.converged && std::abs(m.value - 1.0) <= 1e-3, "t=" + num(t) + " mass-1 " + num(m.value - 1.0));
  }
}

void c05_gradient_band(Verdict& v) {
  double lo = INFINITY, hi = 0.0;
  bool finite = true;
  for (double eps : {0.0, 0.5})
    for (double t : {0.25, 1.0, 4.0, 16.0}) {
      const L1Result g = weighted_l1(models()[0], t, eps, L1Kind::gradient, 1e-6);
      const double val = std::sqrt(t) * g.value;
      finite = finite && g.converged && std::isfinite(val) && val > 0.0;
      lo = std::min(lo, val);
      hi = std::max(hi, val);
      v.detail << (v.detail.tellp() > 0 ? "; " : "") << "eps=" << eps << ",t=" << t << ": " << num(val);
    }
  v.expect(finite, "all finite");
  v.expect(hi / lo <= 10.0, "band " + num(hi / lo));
}

void c06_envelopes(Verdict& v) {
  const auto& h = models()[0];
  double klo = INFINITY, khi = 0.0, glo = INFINITY, ghi = 0.0;
  for (double t : {0.25, 1.0, 4.0})
    for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const RadialHeat e = radial_heat_eval(h.dim_v(), h.dim_z(), t, r, 1);
      const double k = e.value() / heat_envelope(h, t, r);
      const double g = std::abs(e.d_dr(r)) / grad_heat_envelope(h, t, r);
      klo = std::min(klo, k);
      khi = std::max(khi, k);
      glo = std::min(glo, g);
      ghi = std::max(ghi, g);
    }
  v.expect(klo > 0.0 && khi / klo <= 20.0, "kernel band " + num(khi / klo));
  v.expect(glo > 0.0 && ghi / glo <= 20.0, "gradient band " + num(ghi / glo));
}

void c07_phi_asymptotics(Verdict& v) {
  double e10 = 0.0, e20 = 0.0;
  for (double L : {10.0, 20.0}) {
    const double err = std::abs(phi_big_normalized(2, 1, std::exp(L)) - 1.0);
    v.expect(err <= 2.0 / L, "X=e^" + num(L) + " error " + num(err));
    (L == 10.0 ? e10 : e20) = err;
  }
  v.expect(e20 < e10, "error decreases");
  const double c = phi_limit_constant(2, 1);
  v.expect(std::abs(c - std::tgamma(1.0) * std::tgamma(1.0)) <= 1e-15, "limit constant " + num(c));
}

void c08_derivation(Verdict& v) {
  double worst = 0.0;
  for (double X : {1.5, 3.0, 10.0}) {
    const Jet<double> J = phi_big_jet(2, 1, X, 1);
    worst = std::max(worst, rel_diff(-J[1] / (2.0 * X), phi_big(2, 3, X)));
  }
  v.expect(worst <= 1e-8, "max relative error " + num(worst));
}

void c09_subordination(Verdict& v) {
  const auto& h = models()[0];
  for (double r : {1.0, 2.0, 5.0}) {
    SPoint<double> p = identity_s(h);
    p.a = std::exp(r);
    const double sub = std::sqrt(modular_fn(h, p)) * subordinated_invsqrt(h, r);
    const double err = rel_diff(sub, kernel_invsqrt(h, p));
    v.expect(err <= 1e-4, "r=" + num(r) + " relative error " + num(err));
  }
}

void c10_rj_identity(Verdict& v) {
  for (int i = 0; i < 2; ++i) {
    const double e = verify_rj_identity(models()[i], 100, 1010 + i).max_rel_err;
    v.expect(e <= 1e-6, std::string(model_label(i)) + " max relative error " + num(e));
  }
}

void c11_binomial(Verdict& v) {
  for (auto [dv, dz] : {std::pair{2, 1}, std::pair{4, 3}}) {
    const BinomialSum b = binomial_constant(dv, dz);
    const double closed = std::sqrt(std::numbers::pi) * std::tgamma(dv / 4.0 + dz / 2.0) /
                          (2.0 * std::tgamma(dv / 4.0 + (dz + 1) / 2.0));
    const double err = std::abs(b.value - closed);
    v.expect(err <= 1e-10, "(" + std::to_string(dv) + "," + std::to_string(dz) + ") error " + num(err));
  }
}

void c12_gelfand_identity(Verdict& v) {
  for (int i = 0; i < 2; ++i) {
    const auto& alg = models()[i];
    const NRadialProfile psi = psi_profile(alg, 2.0);
    double worst = 0.0;
    for (double m : {0.5, 1.0, 2.0}) {
      const std::vector<double> G = gelfand_radial_all(alg, psi, m, 2);
      for (int l = 0; l <= 2; ++l)
        worst = std::max(worst, rel_diff(G[l], xi_s(alg, 2.0, (2.0 * l + 0.5 * alg.dim_v()) * m, m)));
    }
    v.expect(worst <= 1e-3, std::string(model_label(i)) + " max relative error " + num(worst));
  }
}

void c13_plancherel(Verdict& v) {
  for (int i = 0; i < 2; ++i) {
    const PlancherelReport r = plancherel_check(
        models()[i], [](double rx, double rz) { return std::exp(-rx * rx - rz * rz); }, 30, uniform_mu_grid(12.0, 24));
    v.expect(!r.inconclusive && r.rel_err <= 1e-3, std::string(model_label(i)) + " relative error " + num(r.rel_err) +
                                                       " (tail share " + num(r.tail / r.rhs) + ")");
  }
}

void c14_recurrence(Verdict& v) {
  const auto& h = models()[0];
  const NRadialProfile psi = psi_profile(h, 2.0);
  const NRadialProfile x2psi = [&](double rx, double rz) { return rx * rx * psi(rx, rz); };
  const NRadialProfile wpsi = [&](double rx, double rz) { return (1.0 + 0.25 * rx * rx) * psi(rx, rz); };
  double rec = 0.0, tilde = 0.0;
  for (double m : {0.5, 1.0, 2.0}) {
    const std::vector<double> G = gelfand_radial_all(h, psi, m, 3);
    const std::vector<double> X = gelfand_radial_all(h, x2psi, m, 2);
    const std::vector<double> W = gelfand_radial_all(h, wpsi, m, 2);
    for (int l = 0; l <= 2; ++l) {
      const double rhs = (2.0 * l + 1.0) * G[l] - (l > 0 ? l * G[l - 1] : 0.0) - (l + 1.0) * G[l + 1];
      rec = std::max(rec, rel_diff(0.5 * m * X[l], rhs));
      tilde = std::max(tilde, rel_diff(W[l], xi_tilde(h, 2.0, (2.0 * l + 1.0) * m, m)));
    }
  }
  v.expect(rec <= 1e-3, "weight recurrence " + num(rec));
  v.expect(tilde <= 1e-3, "Xi~ identity " + num(tilde));
}

void c15_symbol_norms(Verdict& v) {
  const auto& h = models()[0];
  const auto grid = cone_grid(1e-2, 1e2, 9, 5, 0.25 * h.dim_v());
  const LogGrid base{15.0, 301}, refined{15.0, 601}, wide{20.0, 401};
  const std::pair<const char*, A2Weight> weights[] = {
      {"flat", A2Weight::flat()}, {"power(0.5)", A2Weight::power(0.5)}, {"power(-0.5)", A2Weight::power(-0.5)}};
  const std::pair<const char*, MSymbol> ops[] = {{"M0", MSymbol::M0}, {"Mv", MSymbol::Mv}, {"Mz", MSymbol::Mz}};
  for (const auto& [oname, op] : ops) {
    std::vector<Eigen::MatrixXd> mats;
    double drift = 0.0, widen = 0.0;
    std::vector<double> lo(3, INFINITY), hi(3, 0.0);
    bool finite = true;
    for (const ConePoint& p : grid) {
      const OperatorMatrix T = build_m_operator(h, op, p.lambda, p.mu, base);
      for (int w = 0; w < 3; ++w) {
        const OpNormResult n = op_norm(T, weights[w].second);
        finite = finite && n.converged && std::isfinite(n.value) && n.value > 0.0;
        lo[w] = std::min(lo[w], n.value);
        hi[w] = std::max(hi[w], n.value);
        if (w == 0) {
          const double nr = op_norm(build_m_operator(h, op, p.lambda, p.mu, refined), weights[0].second).value;
          const double nw = op_norm(build_m_operator(h, op, p.lambda, p.mu, wide), weights[0].second).value;
          drift = std::max(drift, std::abs(nr / n.value - 1.0));
          widen = std::max(widen, std::abs(nw / n.value - 1.0));
        }
      }
    }
    v.expect(finite, std::string(oname) + " finite");
    for (int w = 0; w < 3; ++w)
      v.expect(hi[w] / lo[w] <= 20.0, std::string(oname) + " " + weights[w].first + " band " + num(hi[w] / lo[w]));
    v.expect(drift < 0.05, std::string(oname) + " refinement drift " + num(drift));
    v.detail << "; " << oname << " truncation sensitivity U 15->20 " << num(widen) << " (diagnostic)";
  }
}

void c16_symbol_envelopes(Verdict& v) {
  const auto& h = models()[0];
  const double kappa = 0.25 * h.dim_v();
  const auto base = cone_grid(1e-2, 1e2, 9, 5, kappa);
  const auto ext = cone_grid(1e-3, 1e3, 13, 5, kappa);
  const std::pair<const char*, FSymbol> syms[] = {{"F0", FSymbol::F0}, {"Fv", FSymbol::Fv}, {"Fz", FSymbol::Fz}};
  for (const auto& [name, f] : syms)
    for (int order = 0; order <= 2; ++order) {
      const SweepReport b = symbol_derivative_sweep(h, f, order, base, 0.9);
      const SweepReport e = symbol_derivative_sweep(h, f, order, ext, 0.9);
      const std::string tag = std::string(name) + " order " + std::to_string(order);
      v.expect(b.finite && e.finite, tag + " finite");
      v.expect(e.max_ratio <= 2.0 * b.max_ratio, tag + " sup " + num(b.max_ratio) + ", extended " + num(e.max_ratio));
    }
  for (int order = 0; order <= 2; ++order) {
    const HolderReport r = holder_check(h, order, 0.5, {1e-1, 1e-2, 1e-3}, 40, kappa, 1616 + order);
    const bool ok = std::isfinite(r.sup_ratio[2]) && r.sup_ratio[2] <= 2.0 * r.sup_ratio[0] &&
                    r.sup_ratio[1] <= 2.0 * r.sup_ratio[0];
    v.expect(ok, "Holder order " + std::to_string(order) + " sups " + num(r.sup_ratio[0]) + ", " +
                     num(r.sup_ratio[1]) + ", " + num(r.sup_ratio[2]));
  }
}

OperatorMatrix scaled_identity(const LogGrid& g, double c) {
  return {g, c * Eigen::MatrixXd::Identity(g.N, g.N)};
}

void c17_r_bound(Verdict& v) {
  const LogGrid g{1.0, 11};
  const double two = r_bound_estimate({scaled_identity(g, 2.0), scaled_identity(g, 0.5)}, 2.0, 20, 1717);
  v.expect(std::abs(two / 2.0 - 1.0) <= 0.05, "{2I, I/2} -> " + num(two));
  OperatorMatrix T{g, Eigen::MatrixXd::Zero(g.N, g.N)};
  for (int k = 0; k < g.N; ++k)
    for (int j = 0; j < g.N; ++j) T.entries(k, j) = 1.0 / (1.0 + k + 2 * j);
  const double single = r_bound_estimate({T}, 2.0, 20, 1718);
  const double norm = op_norm(T, A2Weight::flat()).value;
  v.expect(std::abs(single / norm - 1.0) <= 0.05, "singleton " + num(single) + " vs norm " + num(norm));
  const auto& h = models()[0];
  const LogGrid grid{15.0, 301};
  std::vector<OperatorMatrix> fam;
  double max_norm = 0.0;
  for (int i = -2; i <= 2; ++i) {
    fam.push_back(build_m_operator(h, MSymbol::Mv, std::ldexp(1.0, i), 0.0, grid));
    max_norm = std::max(max_norm, op_norm(fam.back(), A2Weight::flat()).value);
  }
  const double est = r_bound_estimate(fam, 2.0, 10, 1719);
  v.expect(std::abs(est / max_norm - 1.0) <= 0.1, "dyadic M_v family " + num(est) + " vs max norm " + num(max_norm));
}

void c18_density_bands(Verdict& v) {
  const auto& h = models()[0];
  const auto family = standard_profile_family();
  const std::pair<const char*, DensityVariant> variants[] = {{"full", DensityVariant::full},
                                                             {"minus", DensityVariant::minus},
                                                             {"plus", DensityVariant::plus},
                                                             {"zero", DensityVariant::zero}};
  const WeightSpec specs[] = {{0, 0, 0, 0, 0}, {1, 0, -0.5, 0, 0}, {0, 1, -0.5, 0, 0}, {2, 0, -0.5, 0, 0}};
  for (const WeightSpec& ws : specs)
    for (const auto& [vname, variant] : variants) {
      const RatioReport r = radial_ratio_test(ws, h, variant, family, 1e-5);
      const double band = r.min_ratio > 0.0 ? r.max_ratio / r.min_ratio : INFINITY;
      std::ostringstream tag;
      tag << "(" << ws.b << "," << ws.c << "," << ws.s << ",0,0) " << vname << " band " << num(band);
      v.expect(r.converged && band <= 10.0, tag.str());
    }
  for (const NamedComparison& nc : radial_consequence_comparisons(h)) {
    const RatioReport r = radial_ratio_test(h, nc.cmp, family, 1e-5);
    const double band = r.min_ratio > 0.0 ? r.max_ratio / r.min_ratio : INFINITY;
    v.expect(r.converged && band <= 10.0, nc.name + " band " + num(band));
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Verdict&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "htype_identity", c01_htype_identity},     {2, "group_axioms", c02_group_axioms},
      {3, "heat_equation", c03_heat_equation},       {4, "heat_mass", c04_mass},
      {5, "gradient_l1_band", c05_gradient_band},    {6, "pointwise_envelopes", c06_envelopes},
      {7, "phi_asymptotics", c07_phi_asymptotics},   {8, "phi_derivation", c08_derivation},
      {9, "subordination", c09_subordination},       {10, "rj_identity", c10_rj_identity},
      {11, "binomial_constant", c11_binomial},       {12, "gelfand_identity", c12_gelfand_identity},
      {13, "plancherel", c13_plancherel},            {14, "weight_recurrence", c14_recurrence},
      {15, "symbol_norms", c15_symbol_norms},        {16, "symbol_envelopes", c16_symbol_envelopes},
      {17, "r_bound", c17_r_bound},                  {18, "density_bands", c18_density_bands}};
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-18)")->check(CLI::Range(1, 18));
  CLI11_PARSE(app, argc, argv);
  bool all = true;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %02d %s (%.1fs): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.str().c_str());
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
