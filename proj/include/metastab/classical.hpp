#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "metastab/rng.hpp"

namespace metastab {

/// Classical spin model: Ising couplings and fields on {+1, -1} spins,
/// E(x) = -sum J_ij s_i s_j - sum h_i s_i. Bit b=0 means spin +1.
struct SpinModel {
  int sites = 0;
  std::vector<std::tuple<int, int, double>> couplings;
  std::vector<double> fields;
  double beta = 1.0;

  double energy(std::uint32_t config) const;
  double energy_delta_flip(std::uint32_t config, int site) const;  // E(x^a) - E(x)

  /// Ferromagnetic m x m block, unit couplings, open boundary.
  static SpinModel ferromagnet_block(int m, double beta);
  /// Single spin in a field.
  static SpinModel single_spin(double field, double beta);
  static SpinModel chain(int sites, double coupling, double beta);
};

enum class RateKind { HeatBath, Metropolis };

/// Exact single-site continuous-time Glauber chain on up to 2^20 states.
class ClassicalChain {
 public:
  ClassicalChain(SpinModel model, RateKind rates = RateKind::HeatBath,
                 std::vector<int> active_sites = {});

  const SpinModel& model() const { return model_; }
  std::size_t num_states() const { return std::size_t(1) << model_.sites; }
  const std::vector<int>& active_sites() const { return active_; }

  /// Flip rate of `site` at configuration x (detailed-balanced w.r.t. pi).
  double flip_rate(std::uint32_t x, int site) const;

  /// Stationary Gibbs distribution.
  std::vector<double> stationary() const;

  /// Generator action (L nu)(x) = sum_a [r(x^a -> x) nu(x^a) - r(x -> x^a) nu(x)].
  std::vector<double> apply_generator(const std::vector<double>& nu) const;

  /// e^{tL} nu by uniformization (Poisson-weighted kernel powers).
  std::vector<double> evolve(const std::vector<double>& nu, double t, double tol = 1e-12) const;

  /// Detailed-balance defect max |pi(x) r(x->y) - pi(y) r(y->x)|.
  double detailed_balance_defect() const;

 private:
  SpinModel model_;
  RateKind rates_;
  std::vector<int> active_;
  std::vector<double> log_pi_;
};

double l1_distance(const std::vector<double>& a, const std::vector<double>& b);
double l1_norm(const std::vector<double>& v);
double distribution_entropy(const std::vector<double>& p);  // nats

/// Entropy production -sum_x (L nu)(x) log(nu(x)/pi(x)); nu must have full support.
double classical_ep(const ClassicalChain& chain, const std::vector<double>& nu);

/// The same quantity as an s-integral of squared log-likelihood gradients,
/// Gauss-Legendre on [0, 1]; equals classical_ep.
double classical_fisher(const ClassicalChain& chain, const std::vector<double>& nu,
                        int nodes = 64);

/// nu-weighted statistics of |log(nu(x) pi(y) / (nu(y) pi(x)))| over adjacent
/// pairs within the support of nu.
struct ClassicalAdbReport {
  double mean = 0.0;
  double max = 0.0;
  double weight_on_boundary = 0.0;  // nu-rate mass of pairs leaving the support
};
ClassicalAdbReport classical_adb_report(const ClassicalChain& chain,
                                        const std::vector<double>& nu);

// ---------------------------------------------------------------------------
// Block ferromagnets with duplicated encoded bits
// ---------------------------------------------------------------------------

/// Per-block-pair data for the duplicated-majority construction: each of the
/// (L/m)^2 block pairs carries one uniformly random shared bit s; both blocks
/// sample the Gibbs measure conditioned on majority s (ties count for both
/// sectors). Blocks are independent, so every lattice quantity reduces to
/// per-pair enumeration.
struct HardDisksReport {
  int lattice_l = 0, block_m = 0;
  int block_pairs = 0;
  double mi_block = 0.0;       // pair mutual information, nats
  double mi_cut = 0.0;         // block_pairs * mi_block
  double stationarity_block = 0.0;  // ||L_block[mu_0]||_1
  double stationarity_site = 0.0;   // per site
  double stationarity_pair = 0.0;   // ||L_pair[nu_pair]||_1 (exact, m <= 3)
  std::vector<int> sample_pattern;  // seeded illustrative bit assignment
};

HardDisksReport hard_disks_metastable(int lattice_l, int block_m, double beta,
                                      std::uint64_t pattern_seed);

/// The conditional block measures mu_0 / mu_1 and the pair mixture (exact).
std::vector<double> conditioned_block_measure(const SpinModel& block, int bit);
std::vector<double> block_pair_mixture(const SpinModel& block);

// ---------------------------------------------------------------------------
// Recovery
// ---------------------------------------------------------------------------

struct ClassicalRecoveryRow {
  double t = 0.0;
  double total_error = 0.0;
  double leakage = 0.0;
  double mixing = 0.0;
  double leakage_bound = 0.0;
};

/// Exact-mode recovery: ||nu - e^{t L_A}[nu_Abar (x) tau_A]||_1 and its split.
std::vector<ClassicalRecoveryRow> classical_recovery_experiment(
    const ClassicalChain& full_chain, const std::vector<double>& nu, const std::set<int>& region,
    const std::vector<double>& tau_region, const std::vector<double>& t_grid);

/// Replace the region marginal: nu_Abar (x) tau_A.
std::vector<double> resample_region(const std::vector<double>& nu, int sites,
                                    const std::set<int>& region,
                                    const std::vector<double>& tau_region);

// ---------------------------------------------------------------------------
// Gillespie sampling (MCMC mode, used past the exact-state-space threshold)
// ---------------------------------------------------------------------------

struct GillespieResult {
  std::uint32_t final_config = 0;
  double elapsed = 0.0;
  int jumps = 0;
};
GillespieResult gillespie_run(const ClassicalChain& chain, std::uint32_t start, double t_max,
                              SplitMix64& rng);

/// Monte Carlo estimate of an observable mean under e^{tL}[point mass at start],
/// with a normal-approximation 95% confidence halfwidth.
struct McEstimate {
  double mean = 0.0;
  double ci_halfwidth = 0.0;
  int samples = 0;
};
McEstimate gillespie_estimate(const ClassicalChain& chain, std::uint32_t start, double t,
                              const std::function<double(std::uint32_t)>& observable, int samples,
                              std::uint64_t seed);

}  // namespace metastab
