#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "drkit/htype_group.hpp"

namespace drkit {

// Raised for malformed configurations and sweep specifications.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  AlgebraKind kind = AlgebraKind::heisenberg;
  int size = 1;
  std::string path;
};

// Parses "heisenberg(d)", "quaternionic(n)" or "custom(path)".
ModelSpec parse_model(const std::string& text);
std::string model_name(const ModelSpec& m);
HTypeAlgebra<double> build_model(const ModelSpec& m);

struct RunConfig {
  ModelSpec model;
  std::vector<std::string> suites;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  std::string out_dir = "drkit_out";
};

const std::vector<std::string>& known_suites();
std::map<std::string, double> default_tolerances();

// Defaults with fields from the JSON file at path; an empty path gives the defaults.
RunConfig load_run_config(const std::string& path);
void validate(const RunConfig& cfg);

struct Check {
  std::string suite;
  std::string name;
  std::string anchor;
  std::string tolerance;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<Check> run_suite(const std::string& suite, const HTypeAlgebra<double>& alg, const RunConfig& cfg);

struct VerifyResult {
  std::vector<Check> checks;
  bool all_pass = false;
};

// Runs the suites concurrently and returns checks ordered by suite name.
VerifyResult run_verify(const RunConfig& cfg);

// Writes report.json, checks.csv and one <suite>.csv per suite into cfg.out_dir.
void write_reports(const RunConfig& cfg, const VerifyResult& res);

const std::vector<std::string>& sweep_quantities();

struct SweepOptions {
  std::string quantity;
  std::string range;
  ModelSpec model;
  double t = 1.0;
  double epsilon = 0.0;
  double mu = 0.0;
};

// Values of "v1,v2,..." or "lo:hi:n" (geometric); tokens may be "e^k". Empty text gives no values.
std::vector<double> parse_range(const std::string& text);

// Writes the header and one row per range value in range order.
void run_sweep(const SweepOptions& opt, std::ostream& out);

}  // namespace drkit
