#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "metastab/pauli.hpp"

namespace metastab {

using Json = nlohmann::ordered_json;

/// Declarative experiment description. Unknown fields are rejected.
struct ExperimentConfig {
  std::string experiment;  // db-certify | ep-fi | adb | time-average | gibbs-recovery |
                           // meta-recovery | strong-markov | area-law |
                           // classical-hard-disks | classical-ep-fi | identity-suite
  std::string model = "ising_chain";  // preset name or "terms"
  int n = 3;
  std::vector<std::pair<std::string, double>> terms;  // explicit Pauli terms (model == "terms")
  std::vector<double> betas = {1.0};
  double sigma_over_invbeta = 1.0;  // sigma = this / beta
  double eta = 1.0;
  std::vector<std::set<int>> regions;
  std::string noise = "depolarizing";  // depolarizing | erasure | measurement | identity
  double noise_strength = 1.0;
  std::vector<double> t_grid = {1.0, 10.0, 100.0};
  int s_nodes = 32;  // per half interval
  int draws = 20;
  std::uint64_t seed = 42;
  int lattice_l = 4;
  std::vector<int> block_ms = {2, 3, 4};
  std::uint64_t model_seed = 7;  // for random_2local
  bool strict = false;

  static ExperimentConfig from_json(const Json& j);
  Json to_json() const;
};

/// Parse + schema-validate a config file. Throws std::invalid_argument with a
/// message naming the offending field.
ExperimentConfig load_config(const std::string& path);

/// Assemble the configured Hamiltonian preset.
HamiltonianSpec build_model(const ExperimentConfig& cfg);

/// One gate outcome inside a result record.
struct GateResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Run outcome: config echo, named outputs, gates, wall time. The `outputs`
/// subtree is deterministic for a fixed (config, seed); wall time lives under
/// `meta` and is excluded from reproducibility comparisons.
struct ResultRecord {
  ExperimentConfig config;
  Json outputs = Json::object();
  std::vector<GateResult> gates;
  double wall_ms = 0.0;

  bool all_pass() const;
  Json to_json() const;
};

/// Series row sink: writes `series/<name>.csv` under the output directory.
class CsvWriter {
 public:
  CsvWriter(const std::string& dir, const std::string& name,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  std::string path() const { return path_; }

 private:
  std::string path_;
};

void write_result(const ResultRecord& rec, const std::string& out_dir);

}  // namespace metastab
