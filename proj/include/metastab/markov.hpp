#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "metastab/lindblad.hpp"

namespace metastab {

/// Kraus-represented channel acting on a region (identity elsewhere).
struct QuantumChannel {
  enum class Kind { Erasure, Depolarizing, Measurement, Identity, Custom };
  Kind kind = Kind::Custom;
  std::set<int> region;
  std::vector<Matrix> kraus;  // full-register matrices

  /// max elementwise deviation of sum M^dag M from the identity.
  double completeness_defect() const;

  static QuantumChannel identity(int n);
  /// Replace the region with a fixed state tau (default maximally mixed).
  static QuantumChannel erasure(int n, const std::set<int>& region, const Matrix& tau = Matrix());
  static QuantumChannel depolarizing(int n, const std::set<int>& region, double p);
  /// Computational-basis measurement of the region (projective Kraus set).
  static QuantumChannel measurement_z(int n, const std::set<int>& region);
};

Matrix apply_channel(const QuantumChannel& ch, const Matrix& state);

/// Outcome decomposition {(p_b, sigma_b)}; recombines to apply_channel.
std::vector<std::pair<double, Matrix>> measurement_branches(const QuantumChannel& ch,
                                                            const Matrix& state);

// ---------------------------------------------------------------------------
// Local time-averaged recovery
// ---------------------------------------------------------------------------

/// R_{A,t}[x] = (1/t) integral_0^t e^{s L_A}[x] ds with L_A the region
/// generator (no global Hamiltonian commutator). Linear in x; trace scale of
/// the input is preserved, so unnormalized branch inputs are fine.
Matrix recovery_map(const LindbladOperator& region_lind, const Matrix& x_lab, double t);

struct RecoveryResult {
  std::set<int> region;
  double t = 0.0;
  double total_error = 0.0;    // ||sigma - R[N[sigma]]||_1
  double leakage = 0.0;        // ||sigma - R[sigma]||_1
  double mixing = 0.0;         // ||R[sigma - N[sigma]]||_1
  double leakage_bound = 0.0;  // t ||L_A[sigma]||_1
  double triangle_defect = 0.0;  // total - leakage - mixing (<= ~1e-10)
};

RecoveryResult recovery_errors(const LindbladOperator& region_lind, const Matrix& sigma,
                               const QuantumChannel& noise, double t);

/// Recovery of the Gibbs state over a time grid.
std::vector<RecoveryResult> gibbs_recovery_experiment(const LindbladOperator& region_lind,
                                                      double beta, const QuantumChannel& noise,
                                                      const std::vector<double>& t_grid);

/// Recovery of a prepared metastable state; also reports the grid minimizer.
struct MetastableRecoveryReport {
  std::vector<RecoveryResult> rows;
  double best_t = 0.0;
  double best_error = 0.0;
  double epsilon_meta = 0.0;  // ||L_A[sigma]||_1 of the input state
};
MetastableRecoveryReport metastable_recovery_experiment(const LindbladOperator& region_lind,
                                                        const Matrix& sigma_meta,
                                                        const QuantumChannel& noise,
                                                        const std::vector<double>& t_grid);

/// Local stationarity |<R^dag O, L_a^dag R^dag O>_sigma| for random O;
/// returns the max over trials and terms (bounded by 2/t).
double local_stationarity_max(const LindbladOperator& region_lind, const Matrix& sigma,
                              double t, int trials, std::uint64_t seed);

/// Strong-Markov statistics: sum_b ||R[M_b sigma M_b^dag] - p_b sigma||_1 plus
/// the plain error ||R[N[sigma]] - sigma||_1 (convexity: plain <= strong).
struct StrongMarkovReport {
  double strong_error = 0.0;
  double plain_error = 0.0;
  std::vector<double> per_outcome;
};
StrongMarkovReport strong_markov_report(const Matrix& sigma, const QuantumChannel& measurement,
                                        const std::function<Matrix(const Matrix&)>& recovery);

// ---------------------------------------------------------------------------
// Channel difference as weighted commutators
// ---------------------------------------------------------------------------

/// Coefficients c of X - N^dag[X] = sum c_{a,S,S'} S [A^a, X] S' with A^a
/// single-qubit Paulis and S, S' Pauli strings on the region.
struct CommutatorTerm {
  PauliString left;    // S
  PauliString local;   // A^a
  PauliString right;   // S'
  Complex coefficient;
};
std::vector<CommutatorTerm> channel_commutator_decomposition(const QuantumChannel& ch, int n);

/// Max reconstruction deviation of the decomposition on random observables.
double commutator_decomposition_residual(const QuantumChannel& ch, int n, int trials,
                                         std::uint64_t seed);

}  // namespace metastab
