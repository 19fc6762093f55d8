#include "metastab/io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "metastab/version.hpp"

namespace metastab {

namespace {

const std::set<std::string> kExperiments = {
    "db-certify",     "ep-fi",        "adb",          "time-average",
    "gibbs-recovery", "meta-recovery", "strong-markov", "area-law",
    "classical-hard-disks", "classical-ep-fi", "identity-suite"};

const std::set<std::string> kKnownFields = {
    "experiment", "model", "n",       "terms",   "betas",   "sigma_over_invbeta",
    "eta",        "regions", "noise", "noise_strength", "t_grid", "s_nodes",
    "draws",      "seed",  "lattice_l", "block_ms", "model_seed", "strict"};

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kKnownFields.count(it.key()))
      throw std::invalid_argument("config: unknown field '" + it.key() + "'");
  ExperimentConfig cfg;
  if (!j.contains("experiment")) throw std::invalid_argument("config: missing 'experiment'");
  cfg.experiment = j.at("experiment").get<std::string>();
  if (!kExperiments.count(cfg.experiment))
    throw std::invalid_argument("config: unknown experiment '" + cfg.experiment + "'");
  if (j.contains("model")) cfg.model = j.at("model").get<std::string>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("terms"))
    for (const auto& t : j.at("terms"))
      cfg.terms.push_back({t.at("paulis").get<std::string>(), t.at("coeff").get<double>()});
  if (j.contains("betas")) cfg.betas = j.at("betas").get<std::vector<double>>();
  if (j.contains("sigma_over_invbeta"))
    cfg.sigma_over_invbeta = j.at("sigma_over_invbeta").get<double>();
  if (j.contains("eta")) cfg.eta = j.at("eta").get<double>();
  if (j.contains("regions"))
    for (const auto& r : j.at("regions")) {
      std::set<int> reg;
      for (const auto& q : r) reg.insert(q.get<int>());
      cfg.regions.push_back(std::move(reg));
    }
  if (j.contains("noise")) cfg.noise = j.at("noise").get<std::string>();
  if (j.contains("noise_strength")) cfg.noise_strength = j.at("noise_strength").get<double>();
  if (j.contains("t_grid")) cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
  if (j.contains("s_nodes")) cfg.s_nodes = j.at("s_nodes").get<int>();
  if (j.contains("draws")) cfg.draws = j.at("draws").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("lattice_l")) cfg.lattice_l = j.at("lattice_l").get<int>();
  if (j.contains("block_ms")) cfg.block_ms = j.at("block_ms").get<std::vector<int>>();
  if (j.contains("model_seed")) cfg.model_seed = j.at("model_seed").get<std::uint64_t>();
  if (j.contains("strict")) cfg.strict = j.at("strict").get<bool>();
  return cfg;
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["model"] = model;
  j["n"] = n;
  if (!terms.empty()) {
    j["terms"] = Json::array();
    for (const auto& [p, c] : terms) j["terms"].push_back({{"paulis", p}, {"coeff", c}});
  }
  j["betas"] = betas;
  j["sigma_over_invbeta"] = sigma_over_invbeta;
  j["eta"] = eta;
  if (!regions.empty()) {
    j["regions"] = Json::array();
    for (const auto& r : regions) j["regions"].push_back(std::vector<int>(r.begin(), r.end()));
  }
  j["noise"] = noise;
  j["noise_strength"] = noise_strength;
  j["t_grid"] = t_grid;
  j["s_nodes"] = s_nodes;
  j["draws"] = draws;
  j["seed"] = seed;
  j["lattice_l"] = lattice_l;
  j["block_ms"] = block_ms;
  j["model_seed"] = model_seed;
  j["strict"] = strict;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  return ExperimentConfig::from_json(j);
}

HamiltonianSpec build_model(const ExperimentConfig& cfg) {
  if (cfg.model == "ising_chain") return ising_chain(cfg.n);
  if (cfg.model == "single_qubit") return single_qubit_z();
  if (cfg.model == "random_2local") return random_2local(cfg.n, cfg.model_seed);
  if (cfg.model == "terms") {
    std::vector<HamiltonianTerm> terms;
    for (const auto& [paulis, coeff] : cfg.terms)
      terms.push_back(HamiltonianTerm::from_pauli(PauliString::parse(paulis), coeff));
    HamiltonianSpec h(cfg.n, std::move(terms));
    h.set_description("terms");
    return h;
  }
  throw std::invalid_argument("config: unknown model '" + cfg.model + "'");
}

bool ResultRecord::all_pass() const {
  for (const auto& g : gates)
    if (!g.pass) return false;
  return true;
}

Json ResultRecord::to_json() const {
  Json j;
  j["config"] = config.to_json();
  j["outputs"] = outputs;
  j["gates"] = Json::array();
  for (const auto& g : gates)
    j["gates"].push_back({{"name", g.name},
                          {"pass", g.pass},
                          {"value", g.value},
                          {"threshold", g.threshold},
                          {"detail", g.detail}});
  j["meta"] = {{"version", kVersion}, {"code_hash", kGitHash}, {"wall_ms", wall_ms}};
  return j;
}

CsvWriter::CsvWriter(const std::string& dir, const std::string& name,
                     const std::vector<std::string>& columns) {
  std::filesystem::create_directories(std::filesystem::path(dir) / "series");
  path_ = (std::filesystem::path(dir) / "series" / (name + ".csv")).string();
  std::ofstream f(path_);
  for (std::size_t i = 0; i < columns.size(); ++i) f << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
  std::ofstream f(path_, std::ios::app);
  f.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) f << values[i] << (i + 1 < values.size() ? "," : "\n");
}

void write_result(const ResultRecord& rec, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  // atomic-ish: write to a temp name, then rename
  auto final_path = std::filesystem::path(out_dir) / "result.json";
  auto tmp_path = std::filesystem::path(out_dir) / ".result.json.tmp";
  {
    std::ofstream f(tmp_path);
    f << rec.to_json().dump(1) << "\n";
  }
  std::filesystem::rename(tmp_path, final_path);
}

}  // namespace metastab
