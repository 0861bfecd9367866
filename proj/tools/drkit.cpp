#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "drkit/verify.hpp"

namespace {

constexpr int kUsage = 2;

int verify(const std::string& config, const std::optional<std::string>& model,
           const std::map<std::string, std::optional<double>>& tol, const std::optional<std::uint64_t>& seed,
           const std::optional<std::string>& out) {
  drkit::RunConfig cfg = drkit::load_run_config(config);
  if (model) cfg.model = drkit::parse_model(*model);
  for (const auto& [name, value] : tol)
    if (value) cfg.tolerances[name] = *value;
  if (seed) cfg.seed = *seed;
  if (out) cfg.out_dir = *out;
  drkit::validate(cfg);
  const drkit::VerifyResult res = drkit::run_verify(cfg);
  drkit::write_reports(cfg, res);
  int failed = 0;
  for (const drkit::Check& c : res.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.suite << '/' << c.name << " value=" << c.value
              << " threshold=" << c.threshold;
    if (!c.note.empty()) std::cout << " error=" << c.note;
    std::cout << '\n';
    failed += !c.pass;
  }
  std::cout << res.checks.size() << " checks, " << failed << " failed; report in " << cfg.out_dir << '\n';
  return res.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification toolkit for Damek-Ricci spaces"};
  app.require_subcommand(1);

  CLI::App* ver = app.add_subcommand("verify", "Run verification suites and write report files");
  std::string config;
  std::optional<std::string> model, out;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::optional<double>> tol;
  ver->add_option("--config", config, "JSON run configuration");
  ver->add_option("--model", model, "heisenberg(d), quaternionic(n) or custom(path)");
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--out", out, "Output directory");
  for (const auto& entry : drkit::default_tolerances()) {
    const std::string& name = entry.first;
    ver->add_option("--tol." + name, tol[name], "Tolerance override");
  }

  CLI::App* sw = app.add_subcommand("sweep", "Evaluate a quantity over a parameter range as CSV");
  drkit::SweepOptions sopt;
  std::string smodel = "heisenberg(1)";
  std::string sout;
  sw->add_option("--quantity", sopt.quantity, "weighted_l1, phi_ratio, op_norm, radial_heat or gelfand_psi2")
      ->required();
  sw->add_option("--range", sopt.range, "v1,v2,... or lo:hi:n (geometric); values may be e^k")->required();
  sw->add_option("--model", smodel, "heisenberg(d), quaternionic(n) or custom(path)");
  sw->add_option("--t", sopt.t, "Time for radial_heat");
  sw->add_option("--epsilon", sopt.epsilon, "Gaussian weight exponent for weighted_l1");
  sw->add_option("--mu", sopt.mu, "|mu| for op_norm");
  sw->add_option("--out", sout, "Output CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (ver->parsed()) return verify(config, model, tol, seed, out);
    sopt.model = drkit::parse_model(smodel);
    if (sout.empty()) {
      drkit::run_sweep(sopt, std::cout);
    } else {
      std::ofstream file(sout);
      if (!file) throw drkit::UsageError("cannot open output file: " + sout);
      drkit::run_sweep(sopt, file);
    }
    return 0;
  } catch (const drkit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
