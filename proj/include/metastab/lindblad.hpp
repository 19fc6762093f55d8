#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metastab/filters.hpp"
#include "metastab/kernels.hpp"
#include "metastab/rng.hpp"
#include "metastab/spectrum.hpp"

namespace metastab {

/// Row-major vectorization helpers: vec(X)[k*d + l] = X(k, l).
Vector vectorize(const Matrix& x);
Matrix unvectorize(const Vector& v, int d);

/// One dissipative term: jump operator in the Hamiltonian eigenbasis together
/// with its precomputed decay and coherent operators.
struct LindbladTerm {
  std::string label;
  Matrix jump;      // A in the eigenbasis
  Matrix decay;     // integral gamma(w) Ahat(w)^dag Ahat(w) dw
  Matrix coherent;  // Hermitian C from the principal-value kernel
};

/// Detailed-balanced Lindbladian with shifted-Metropolis weights:
///   L[x] = -i eta_H [H, x] + eta sum_a ( -i[C^a, x]
///          + sum transition(A^a) - 1/2 {decay^a, x} ),
/// all stored as Bohr-pair coefficient tables in the eigenbasis of H.
class LindbladOperator {
 public:
  LindbladOperator(std::shared_ptr<const Spectrum> spec, FilterParams fp,
                   std::vector<Matrix> jumps_lab, std::vector<std::string> labels,
                   bool include_hamiltonian, double eta = 1.0);

  const Spectrum& spectrum() const { return *spec_; }
  const FilterParams& filter_params() const { return fp_; }
  int dim() const { return spec_->dim(); }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const LindbladTerm& term(int a) const { return terms_[a]; }
  bool includes_hamiltonian() const { return include_hamiltonian_; }
  double eta() const { return eta_; }
  const PairWeightTable& metropolis_table() const { return gamma_table_; }

  // Eigenbasis actions (Schroedinger and Heisenberg pictures).
  Matrix apply_eig(const Matrix& x) const;
  Matrix apply_adjoint_eig(const Matrix& y) const;
  Matrix apply_term_eig(int a, const Matrix& x) const;
  Matrix apply_term_adjoint_eig(int a, const Matrix& y) const;

  // Lab-basis wrappers.
  Matrix apply(const Matrix& x) const;
  Matrix apply_adjoint(const Matrix& y) const;
  Matrix apply_term(int a, const Matrix& x) const;

  /// ||L[x]||_1 in either basis (trace norm is basis independent).
  double stationarity_error(const Matrix& x_lab) const;

  /// Dense superoperator (eigenbasis, row-major vec). Guarded by a dimension
  /// cap: 4^n memory.
  Matrix superoperator(int max_dim = 40) const;
  Matrix superoperator_adjoint(int max_dim = 40) const;
  Matrix superoperator_term(int a, int max_dim = 40) const;

  /// Min eigenvalue of the Choi matrix of e^{eps L} (complete-positivity check).
  double choi_min_eigenvalue(double eps = 1e-3) const;

 private:
  std::shared_ptr<const Spectrum> spec_;
  FilterParams fp_;
  bool include_hamiltonian_;
  double eta_;
  std::vector<LindbladTerm> terms_;
  PairWeightTable gamma_table_;
};

/// Single-jump Lindbladian without the Hamiltonian commutator.
LindbladOperator build_local_lindbladian(std::shared_ptr<const Spectrum> spec,
                                         const FilterParams& fp, const Matrix& jump_lab,
                                         const std::string& label = "jump");

/// Full generator -i[H, .] + eta sum_a L_a over a jump list.
LindbladOperator build_full_lindbladian(std::shared_ptr<const Spectrum> spec,
                                        const FilterParams& fp,
                                        const std::vector<PauliString>& jumps, double eta = 1.0);

/// Jumps restricted to a region (single-qubit Paulis), Hamiltonian term off:
/// the generator of the local recovery dynamics.
LindbladOperator build_region_lindbladian(std::shared_ptr<const Spectrum> spec,
                                          const FilterParams& fp, const std::set<int>& region);

// ---------------------------------------------------------------------------
// Dynamics
// ---------------------------------------------------------------------------

struct EvolveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int superop_max_dim = 40;  // vec-exponential route up to this Hilbert dim
  bool force_ode = false;
};

/// e^{tL}[sigma0]; vectorized matrix exponential for small registers, adaptive
/// Dormand-Prince otherwise. Trace preserved to 1e-9, positivity to -1e-8.
DensityMatrix evolve(const LindbladOperator& lind, const Matrix& sigma0_lab, double t,
                     const EvolveOptions& opts = {});

/// Time-averaged state (1/t) integral_0^t e^{sL}[sigma0] ds.
/// Exact phi1-composite propagator by default; "quadrature" uses the
/// Gauss-Legendre rule with a node-doubling convergence gate.
struct TimeAverageOptions {
  enum class Method { Phi1Composite, GaussLegendre } method = Method::Phi1Composite;
  int nodes = 64;
  double doubling_tol = 1e-8;
};
DensityMatrix time_averaged_state(const LindbladOperator& lind, const Matrix& sigma0_lab, double t,
                                  const TimeAverageOptions& opts = {});

/// Heisenberg-picture time average (1/t) integral_0^t e^{s L^dag}[O] ds (lab basis).
Matrix time_averaged_observable(const LindbladOperator& lind, const Matrix& obs_lab, double t);

// ---------------------------------------------------------------------------
// Detailed balance diagnostics
// ---------------------------------------------------------------------------

/// KMS inner product Tr[X^dag rho^{1/2} Y rho^{1/2}] given rho's eigenbasis diagonal.
Complex kms_inner(const Matrix& x, const Matrix& y, const RealVector& rho_diag);

/// Max over random X, Y (and all terms) of
/// |<X, L_a^dag Y>_rho - <L_a^dag X, Y>_rho| / (||X|| ||Y||).
double kms_detailed_balance_residual(const LindbladOperator& lind, int trials,
                                     std::uint64_t seed = 17);

/// Dirichlet form of one term with an arbitrary full-rank weight state w:
///   sum over Bohr pairs of <[A_{nu1}, X], [A_{nu2}, Y]>_w ghat(nu2-nu1) Gh(nu1,nu2).
/// For w = rho this equals -<X, L_a^dag[Y]>_rho exactly.
Complex dirichlet_form(const LindbladOperator& lind, int a, const Matrix& x_eig,
                       const Matrix& y_eig, const Matrix& weight_eig);

// ---------------------------------------------------------------------------
// Coefficient-table serialization (reproducibility dumps)
// ---------------------------------------------------------------------------

/// Versioned dump of the per-jump coefficient operators. JSON carries exact
/// shortest-round-trip floats; the binary format is little-endian f64 with a
/// "MSTBTAB1" magic header.
void save_tables_json(const LindbladOperator& lind, const std::string& path);
void save_tables_binary(const LindbladOperator& lind, const std::string& path);
/// Reads either format back into (labels, jump/decay/coherent triples).
struct TableDump {
  double beta = 0, sigma = 0, eta = 1;
  std::vector<std::string> labels;
  std::vector<Matrix> jump, decay, coherent;
};
TableDump load_tables(const std::string& path);

}  // namespace metastab
