#include "drkit/htype_group.hpp"

#include <fstream>
#include "json.hpp"

namespace drkit {

HTypeAlgebra<double> load_algebra_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra file: " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  std::vector<BracketEntry> entries;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 4) throw std::invalid_argument("bracket entry must be [i, j, k, value]");
    entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>()});
  }
  return custom_algebra<double>(j.at("dim_v").get<int>(), j.at("dim_z").get<int>(), entries);
}

HTypeReport verify_htype(const HTypeAlgebra<double>& alg, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_htype needs samples >= 1");
  HTypeReport rep;
  auto check = [&](const Vec<double>& mu, const Vec<double>& x) {
    const double scale = mu.norm() * x.norm();
    if (scale == 0.0) return;
    const double v = std::abs(alg.j_map(mu, x).norm() - scale) / scale;
    rep.max_violation = std::max(rep.max_violation, v);
  };
  for (int k = 0; k < alg.dim_z(); ++k)
    for (int i = 0; i < alg.dim_v(); ++i) check(Vec<double>::Unit(alg.dim_z(), k), Vec<double>::Unit(alg.dim_v(), i));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vec<double> mu(alg.dim_z()), x(alg.dim_v());
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < alg.dim_z(); ++k) mu(k) = nd(rng);
    for (int i = 0; i < alg.dim_v(); ++i) x(i) = nd(rng);
    check(mu, x);
  }
  return rep;
}

}  // namespace drkit
