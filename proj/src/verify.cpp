#include "drkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "drkit/dr_space.hpp"
#include "drkit/gelfand.hpp"
#include "drkit/heat_kernel.hpp"
#include "drkit/riesz_kernels.hpp"
#include "drkit/symbols.hpp"

namespace drkit {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

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

class SuiteBuilder {
 public:
  SuiteBuilder(std::string suite, const RunConfig& cfg) : suite_(std::move(suite)), cfg_(cfg) {}

  // Runs body for the value; pass iff value <= tolerance. Exceptions mark the check failed.
  void add(const std::string& name, const std::string& anchor, const std::string& tol,
           const std::function<double()>& body) {
    Check c{suite_, name, anchor, tol, 0.0, cfg_.tolerances.at(tol), false, ""};
    try {
      c.value = body();
      c.pass = std::isfinite(c.value) && c.value <= c.threshold;
    } catch (const std::exception& e) {
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.note = e.what();
    }
    checks_.push_back(c);
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::string suite_;
  const RunConfig& cfg_;
  std::vector<Check> checks_;
};

std::vector<Check> suite_group(const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  SuiteBuilder b("group", cfg);
  b.add("verify_htype", "H-type identity |J_mu x| = |mu||x|", "htype",
        [&] { return verify_htype(alg, 10000, cfg.seed).max_violation; });
  std::mt19937_64 rng(cfg.seed + 1);
  std::vector<SPoint<double>> pts;
  for (int i = 0; i < 3000; ++i) pts.push_back(random_spoint(alg, rng));
  auto npt = [](const SPoint<double>& p) { return NPoint<double>{p.x, p.z}; };
  b.add("n_associativity", "group law on N is associative", "group", [&] {
    double w = 0.0;
    for (int i = 0; i + 2 < 3000; i += 3) {
      const auto a = npt(pts[i]), c = npt(pts[i + 1]), d = npt(pts[i + 2]);
      w = std::max(w, n_diff(compose_n(alg, compose_n(alg, a, c), d), compose_n(alg, a, compose_n(alg, c, d))));
    }
    return w;
  });
  b.add("n_dilation_automorphism", "dilations are automorphisms of N", "group", [&] {
    double w = 0.0;
    for (int i = 0; i + 1 < 3000; i += 3) {
      const auto a = npt(pts[i]), c = npt(pts[i + 1]);
      const double t = pts[i + 2].a;
      w = std::max(w, n_diff(dilate_n(compose_n(alg, a, c), t), compose_n(alg, dilate_n(a, t), dilate_n(c, t))));
    }
    return w;
  });
  b.add("s_associativity", "group law on S is associative", "group", [&] {
    double w = 0.0;
    for (int i = 0; i + 2 < 3000; i += 3)
      w = std::max(w, s_diff(compose_s(alg, compose_s(alg, pts[i], pts[i + 1]), pts[i + 2]),
                             compose_s(alg, pts[i], compose_s(alg, pts[i + 1], pts[i + 2]))));
    return w;
  });
  b.add("s_inverse", "p p^{-1} is the identity on S", "group", [&] {
    double w = 0.0;
    for (const auto& p : pts) w = std::max(w, s_diff(compose_s(alg, p, inverse_s(p)), identity_s(alg)));
    return w;
  });
  b.add("modular_homomorphism", "delta(pq) = delta(p) delta(q)", "group", [&] {
    double w = 0.0;
    for (int i = 0; i + 1 < 3000; i += 2)
      w = std::max(w, rel_diff(modular_fn(alg, compose_s(alg, pts[i], pts[i + 1])),
                               modular_fn(alg, pts[i]) * modular_fn(alg, pts[i + 1])));
    return w;
  });
  b.add("distance_inverse_symmetry", "|p^{-1}| = |p|", "group", [&] {
    double w = 0.0;
    for (const auto& p : pts) w = std::max(w, rel_diff(distance_s(alg, inverse_s(p)), distance_s(alg, p)));
    return w;
  });
  b.add("distance_lower_bound", "|p| >= |log a|", "group", [&] {
    double w = 0.0;
    for (const auto& p : pts) w = std::max(w, (std::abs(std::log(p.a)) - distance_s(alg, p)) / (1.0 + distance_s(alg, p)));
    return std::max(w, 0.0);
  });
  return b.take();
}

std::vector<Check> suite_geometry(const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  SuiteBuilder b("geometry", cfg);
  b.add("haar_gaussian_product", "right Haar measure on factorized integrands", "haar", [&] {
    HaarRegion box;
    box.u_min = -1.0;
    box.u_max = 1.0;
    box.rel_tol = 1e-10;
    box.abs_tol = 1e-14;
    auto f = [](double rx, double rz, double u) { return std::exp(-rx * rx - rz * rz) * std::exp(u); };
    const double pi = std::acos(-1.0);
    const int dv = alg.dim_v(), dz = alg.dim_z();
    // Right Haar density a^{-1} da in these coordinates.
    const double exact = std::pow(pi, 0.5 * (dv + dz)) * (std::exp(1.0) - std::exp(-1.0));
    return rel_diff(integrate_haar_reduced(alg, f, box).value, exact);
  });
  b.add("density_band_trivial_weight", "direct vs one-variable density integrals, trivial weight", "density_band",
        [&] {
          const RatioReport r = radial_ratio_test(WeightSpec{}, alg, DensityVariant::zero, standard_profile_family(), 1e-5);
          if (!(r.min_ratio > 0.0)) return std::numeric_limits<double>::infinity();
          return r.max_ratio / r.min_ratio;
        });
  return b.take();
}

std::vector<Check> suite_heat(const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  SuiteBuilder b("heat", cfg);
  b.add("heat_mass", "integral of h_t is 1 at t = 1", "mass",
        [&] { return std::abs(weighted_l1(alg, 1.0, 0.0, L1Kind::kernel, 1e-6).value - 1.0); });
  b.add("heat_equation_residual", "d_t h_t + Delta h_t = 0 at random points", "residual", [&] {
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_real_distribution<double> ud(-1.5, 1.5);
    double w = 0.0;
    for (int i = 0; i < 5; ++i) {
      SPoint<double> p = identity_s(alg);
      for (int j = 0; j < alg.dim_v(); ++j) p.x(j) = ud(rng);
      for (int k = 0; k < alg.dim_z(); ++k) p.z(k) = ud(rng);
      p.a = std::exp(ud(rng));
      w = std::max(w, heat_equation_residual(alg, 1.0, p, 0.1).residual);
    }
    return w;
  });
  b.add("heat_envelope_band", "kernel over pointwise envelope, max/min band", "envelope_band", [&] {
    double lo = 1e300, hi = 0.0;
    for (double t : {0.25, 1.0, 4.0})
      for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double q = radial_heat(alg, t, r) / heat_envelope(alg, t, r);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    return hi / lo;
  });
  return b.take();
}

std::vector<Check> suite_riesz(const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  SuiteBuilder b("riesz", cfg);
  const int dv = alg.dim_v(), dz = alg.dim_z();
  b.add("phi_asymptotic", "Phi X^{dv/2+dz} log X tends to its limit, error times log X at X = e^20",
        "phi_asymptotic", [&] {
          const double L = 20.0;
          return std::abs(phi_big_normalized(dv, dz, std::exp(L)) / phi_limit_constant(dv, dz) - 1.0) * L;
        });
  b.add("phi_derivation", "-(1/2X) d/dX Phi_{dv,dz} = Phi_{dv,dz+2}", "derivation", [&] {
    double w = 0.0;
    for (double X : {1.5, 3.0, 10.0}) {
      const Jet<double> J = phi_big_jet(dv, dz, X, 1);
      w = std::max(w, rel_diff(-J[1] / (2.0 * X), phi_big(dv, dz + 2, X)));
    }
    return w;
  });
  b.add("subordination", "kernel of Delta^{-1/2} by subordination at r = 1", "subordination", [&] {
    const double k = phi_constant(dv, dz) * phi_big(dv, dz, std::cosh(0.5));
    return rel_diff(subordinated_invsqrt(alg, 1.0), k);
  });
  b.add("rj_identity", "r_j = Q^{-1} (X_j^N H^{-Q/2})^*", "rj",
        [&] { return verify_rj_identity(alg, 100, cfg.seed + 3).max_rel_err; });
  b.add("binomial_constant", "binomial series against its Gamma closed form", "binomial", [&] {
    const BinomialSum s = binomial_constant(dv, dz);
    return std::abs(s.value - s.closed_form);
  });
  return b.take();
}

std::vector<Check> suite_gelfand(const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  SuiteBuilder b("gelfand", cfg);
  const double dv = alg.dim_v();
  b.add("gelfand_psi2", "Gelfand transform of Psi_2 equals Xi_2", "gelfand", [&] {
    const NRadialProfile psi = psi_profile(alg, 2.0);
    double w = 0.0;
    for (double m : {0.5, 1.0, 2.0}) {
      const std::vector<double> G = gelfand_radial_all(alg, psi, m, 2);
      for (int l = 0; l <= 2; ++l) w = std::max(w, rel_diff(G[l], xi_s(alg, 2.0, (2.0 * l + 0.5 * dv) * m, m)));
    }
    return w;
  });
  b.add("gelfand_xi_tilde", "Gelfand transform of (1 + |x|^2/4) Psi_2 equals Xi~_2", "gelfand", [&] {
    const NRadialProfile psi = psi_profile(alg, 2.0);
    const NRadialProfile wpsi = [&](double rx, double rz) { return (1.0 + 0.25 * rx * rx) * psi(rx, rz); };
    double w = 0.0;
    for (double m : {0.5, 1.0, 2.0}) {
      const std::vector<double> W = gelfand_radial_all(alg, wpsi, m, 2);
      for (int l = 0; l <= 2; ++l) w = std::max(w, rel_diff(W[l], xi_tilde(alg, 2.0, (2.0 * l + 0.5 * dv) * m, m)));
    }
    return w;
  });
  b.add("plancherel_gaussian", "Plancherel formula on the Gaussian profile, L_max = 30", "plancherel", [&] {
    const PlancherelReport r =
        plancherel_check(alg, [](double rx, double rz) { return std::exp(-rx * rx - rz * rz); }, 30,
                         uniform_mu_grid(12.0, 24));
    return r.inconclusive ? std::numeric_limits<double>::infinity() : r.rel_err;
  });
  return b.take();
}

std::vector<Check> suite_symbols(const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  SuiteBuilder b("symbols", cfg);
  b.add("mv_norm_band", "op_norm of M_v over a 3 x 2 cone grid, max/min band", "op_norm_band", [&] {
    const LogGrid grid{15.0, 201};
    double lo = 1e300, hi = 0.0;
    for (const ConePoint& p : cone_grid(1e-1, 1e1, 3, 2, 0.25 * alg.dim_v())) {
      const OpNormResult r = op_norm(build_m_operator(alg, MSymbol::Mv, p.lambda, p.mu, grid), A2Weight::flat());
      if (!r.converged) return std::numeric_limits<double>::infinity();
      lo = std::min(lo, r.value);
      hi = std::max(hi, r.value);
    }
    return hi / lo;
  });
  b.add("r_bound_diagonal", "R-bound of {2I, I/2} is 2", "r_bound", [&] {
    const LogGrid g{1.0, 11};
    OperatorMatrix A{g, 2.0 * Eigen::MatrixXd::Identity(g.N, g.N)}, B{g, 0.5 * Eigen::MatrixXd::Identity(g.N, g.N)};
    return std::abs(r_bound_estimate({A, B}, 2.0, 20, cfg.seed + 4) / 2.0 - 1.0);
  });
  b.add("dyadic_partition", "sum of eta(2^m xi) is 1", "partition", [&] {
    double w = 0.0;
    for (double x = 1e-6; x <= 1e6; x *= 1.37) w = std::max(w, std::abs(dyadic_partition_sum(x) - 1.0));
    return w;
  });
  b.add("fv_envelope_ratio", "F_v derivative envelope ratio over the cone grid, order 2", "envelope_ratio", [&] {
    const SweepReport r = symbol_derivative_sweep(alg, FSymbol::Fv, 2, cone_grid(1e-2, 1e2, 5, 3, 0.25 * alg.dim_v()));
    return r.finite ? r.max_ratio : std::numeric_limits<double>::infinity();
  });
  return b.take();
}

using SuiteFn = std::vector<Check> (*)(const HTypeAlgebra<double>&, const RunConfig&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"gelfand", suite_gelfand}, {"geometry", suite_geometry}, {"group", suite_group},
      {"heat", suite_heat},       {"riesz", suite_riesz},       {"symbols", suite_symbols}};
  return table;
}

void write_csv_rows(std::ostream& out, const std::vector<Check>& checks) {
  out << "suite,name,anchor,value,threshold,pass\n";
  for (const Check& c : checks)
    out << c.suite << ',' << c.name << ",\"" << c.anchor << "\"," << fmt(c.value) << ',' << fmt(c.threshold) << ','
        << (c.pass ? "true" : "false") << '\n';
}

}  // namespace

ModelSpec parse_model(const std::string& text) {
  static const std::regex re(R"(\s*(heisenberg|quaternionic|custom)\s*\((.*)\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw UsageError("unknown model: " + text);
  ModelSpec spec;
  const std::string arg = m[2].str();
  if (m[1] == "custom") {
    if (arg.empty()) throw UsageError("custom model needs a path");
    spec.kind = AlgebraKind::custom;
    spec.path = arg;
    return spec;
  }
  spec.kind = m[1] == "heisenberg" ? AlgebraKind::heisenberg : AlgebraKind::quaternionic;
  try {
    std::size_t used = 0;
    spec.size = std::stoi(arg, &used);
    if (used != arg.size()) throw UsageError("");
  } catch (const std::exception&) {
    throw UsageError("model size must be an integer: " + text);
  }
  if (spec.size < 1) throw UsageError("model size must be positive: " + text);
  return spec;
}

std::string model_name(const ModelSpec& m) {
  switch (m.kind) {
    case AlgebraKind::heisenberg: return "heisenberg(" + std::to_string(m.size) + ")";
    case AlgebraKind::quaternionic: return "quaternionic(" + std::to_string(m.size) + ")";
    case AlgebraKind::custom: return "custom(" + m.path + ")";
  }
  return "";
}

HTypeAlgebra<double> build_model(const ModelSpec& m) {
  switch (m.kind) {
    case AlgebraKind::heisenberg: return heisenberg<double>(m.size);
    case AlgebraKind::quaternionic: return quaternionic<double>(m.size);
    case AlgebraKind::custom: break;
  }
  try {
    return load_algebra_json(m.path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot load custom algebra: ") + e.what());
  }
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"gelfand", "geometry", "group", "heat", "riesz", "symbols"};
  return names;
}

std::map<std::string, double> default_tolerances() {
  return {{"binomial", 1e-10},     {"density_band", 10.0}, {"derivation", 1e-8},   {"envelope_band", 20.0},
          {"envelope_ratio", 1e4}, {"gelfand", 1e-3},      {"group", 1e-12},       {"haar", 1e-6},
          {"htype", 1e-12},        {"mass", 1e-3},         {"op_norm_band", 20.0}, {"partition", 1e-12},
          {"phi_asymptotic", 2.0}, {"plancherel", 1e-3},   {"r_bound", 0.05},      {"residual", 1e-3},
          {"rj", 1e-6},            {"subordination", 1e-4}};
}

RunConfig load_run_config(const std::string& path) {
  RunConfig cfg;
  cfg.suites = known_suites();
  cfg.tolerances = default_tolerances();
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config: " + path);
  json j;
  try {
    j = json::parse(in);
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "model") {
        cfg.model = parse_model(value.get<std::string>());
      } else if (key == "suites") {
        cfg.suites = value.get<std::vector<std::string>>();
      } else if (key == "tolerances") {
        for (const auto& [name, tol] : value.items()) {
          if (!cfg.tolerances.count(name)) throw UsageError("unknown tolerance: " + name);
          cfg.tolerances[name] = tol.get<double>();
        }
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "out_dir") {
        cfg.out_dir = value.get<std::string>();
      } else {
        throw UsageError("unknown config field: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.suites.empty()) throw UsageError("suites must be non-empty");
  for (const std::string& s : cfg.suites)
    if (!suite_table().count(s)) throw UsageError("unknown suite: " + s);
  for (const auto& [name, tol] : cfg.tolerances)
    if (!(tol >= 0.0)) throw UsageError("tolerance must be non-negative: " + name);
  if (cfg.out_dir.empty()) throw UsageError("out_dir must be non-empty");
}

std::vector<Check> run_suite(const std::string& suite, const HTypeAlgebra<double>& alg, const RunConfig& cfg) {
  const auto it = suite_table().find(suite);
  if (it == suite_table().end()) throw UsageError("unknown suite: " + suite);
  return it->second(alg, cfg);
}

VerifyResult run_verify(const RunConfig& cfg) {
  validate(cfg);
  const HTypeAlgebra<double> alg = build_model(cfg.model);
  std::vector<std::string> suites = cfg.suites;
  std::sort(suites.begin(), suites.end());
  suites.erase(std::unique(suites.begin(), suites.end()), suites.end());
  std::vector<std::future<std::vector<Check>>> jobs;
  for (const std::string& s : suites)
    jobs.push_back(std::async(std::launch::async, [&alg, &cfg, s] { return run_suite(s, alg, cfg); }));
  VerifyResult res;
  for (auto& j : jobs) {
    std::vector<Check> part = j.get();
    res.checks.insert(res.checks.end(), part.begin(), part.end());
  }
  res.all_pass = std::all_of(res.checks.begin(), res.checks.end(), [](const Check& c) { return c.pass; });
  return res;
}

void write_reports(const RunConfig& cfg, const VerifyResult& res) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  json report;
  report["model"] = model_name(cfg.model);
  report["seed"] = cfg.seed;
  report["all_pass"] = res.all_pass;
  report["tolerances"] = cfg.tolerances;
  json rows = json::array();
  for (const Check& c : res.checks) {
    json row{{"suite", c.suite},         {"name", c.name},   {"anchor", c.anchor}, {"tolerance", c.tolerance},
             {"threshold", c.threshold}, {"pass", c.pass}};
    row["value"] = std::isfinite(c.value) ? json(c.value) : json(fmt(c.value));
    if (!c.note.empty()) row["note"] = c.note;
    rows.push_back(row);
  }
  report["checks"] = rows;
  std::ofstream(fs::path(cfg.out_dir) / "report.json") << report.dump(2) << '\n';
  std::ofstream all(fs::path(cfg.out_dir) / "checks.csv");
  write_csv_rows(all, res.checks);
  std::map<std::string, std::vector<Check>> by_suite;
  for (const Check& c : res.checks) by_suite[c.suite].push_back(c);
  for (const auto& [suite, checks] : by_suite) {
    std::ofstream out(fs::path(cfg.out_dir) / (suite + ".csv"));
    write_csv_rows(out, checks);
  }
}

const std::vector<std::string>& sweep_quantities() {
  static const std::vector<std::string> names{"gelfand_psi2", "op_norm", "phi_ratio", "radial_heat", "weighted_l1"};
  return names;
}

std::vector<double> parse_range(const std::string& text) {
  std::string body = text;
  if (const auto eq = body.find('='); eq != std::string::npos) body = body.substr(eq + 1);
  body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }), body.end());
  if (body.empty()) return {};
  auto number = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      double v;
      if (tok.rfind("e^", 0) == 0) {
        v = std::exp(std::stod(tok.substr(2), &used));
        used += 2;
      } else {
        v = std::stod(tok, &used);
      }
      if (used != tok.size() || !std::isfinite(v)) throw UsageError("");
      return v;
    } catch (const std::exception&) {
      throw UsageError("invalid range value: " + tok);
    }
  };
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::vector<double> out;
  if (body.find(':') != std::string::npos) {
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("range must be lo:hi:n");
    const double lo = number(parts[0]), hi = number(parts[1]);
    const double n = number(parts[2]);
    if (n < 0 || n != std::floor(n)) throw UsageError("range count must be a non-negative integer");
    if (n > 0 && !(lo > 0 && hi > 0)) throw UsageError("geometric range needs positive ends");
    for (int i = 0; i < static_cast<int>(n); ++i)
      out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, i / (n - 1.0)));
    return out;
  }
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(number(tok));
  return out;
}

void run_sweep(const SweepOptions& opt, std::ostream& out) {
  const auto& names = sweep_quantities();
  if (std::find(names.begin(), names.end(), opt.quantity) == names.end())
    throw UsageError("unknown quantity: " + opt.quantity);
  const std::vector<double> values = parse_range(opt.range);
  const HTypeAlgebra<double> alg = build_model(opt.model);
  const int dv = alg.dim_v(), dz = alg.dim_z();
  out << std::setprecision(17);
  if (opt.quantity == "weighted_l1") {
    out << "t,epsilon,kernel_l1,gradient_l1_scaled,converged\n";
    for (double t : values) {
      if (!(t > 0)) throw UsageError("t must be positive");
      const L1Result k = weighted_l1(alg, t, opt.epsilon, L1Kind::kernel);
      const L1Result g = weighted_l1(alg, t, opt.epsilon, L1Kind::gradient);
      out << t << ',' << opt.epsilon << ',' << k.value << ',' << std::sqrt(t) * g.value << ','
          << (k.converged && g.converged ? "true" : "false") << '\n';
    }
  } else if (opt.quantity == "phi_ratio") {
    out << "X,normalized,limit,error,bound,error_decreasing\n";
    const double limit = phi_limit_constant(dv, dz);
    double prev = std::numeric_limits<double>::infinity();
    for (double X : values) {
      if (!(X > 1)) throw UsageError("X must exceed 1");
      const double v = phi_big_normalized(dv, dz, X);
      const double err = std::abs(v / limit - 1.0);
      out << X << ',' << v << ',' << limit << ',' << err << ',' << 2.0 / std::log(X) << ','
          << (err < prev ? "true" : "false") << '\n';
      prev = err;
    }
  } else if (opt.quantity == "op_norm") {
    out << "lambda,mu,M0,Mv,Mz\n";
    const LogGrid grid{15.0, 301};
    for (double lam : values) {
      if (!(lam > 0)) throw UsageError("lambda must be positive");
      out << lam << ',' << opt.mu;
      for (MSymbol s : {MSymbol::M0, MSymbol::Mv, MSymbol::Mz})
        out << ',' << op_norm(build_m_operator(alg, s, lam, opt.mu, grid), A2Weight::flat()).value;
      out << '\n';
    }
  } else if (opt.quantity == "radial_heat") {
    out << "r,t,value,envelope\n";
    for (double r : values) {
      if (!(r >= 0)) throw UsageError("r must be non-negative");
      out << r << ',' << opt.t << ',' << radial_heat(alg, opt.t, r) << ',' << heat_envelope(alg, opt.t, r) << '\n';
    }
  } else {
    out << "mu,ell,gelfand,xi_2,rel_err\n";
    const NRadialProfile psi = psi_profile(alg, 2.0);
    for (double m : values) {
      if (!(m > 0)) throw UsageError("mu must be positive");
      const std::vector<double> G = gelfand_radial_all(alg, psi, m, 2);
      for (int l = 0; l <= 2; ++l) {
        const double xi = xi_s(alg, 2.0, (2.0 * l + 0.5 * dv) * m, m);
        out << m << ',' << l << ',' << G[l] << ',' << xi << ',' << rel_diff(G[l], xi) << '\n';
      }
    }
  }
}

}  // namespace drkit
