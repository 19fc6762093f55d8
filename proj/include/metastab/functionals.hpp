#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metastab/lindblad.hpp"

namespace metastab {

/// s-quadrature controls: Gauss-Legendre with `nodes_per_half` nodes on each of
/// (-1/2, 0) and (0, 1/2) (the detailed-balance time filter has a kink at 0),
/// gated by node doubling.
struct SQuadrature {
  int nodes_per_half = 32;
  double doubling_rel_tol = 1e-6;
  bool check_doubling = false;
};

/// (w, s)-weighted inner product Tr[X^dag w^{1/2+s} Y w^{1/2-s}].
/// s = 0 is the KMS product, s = 1/2 the GNS product.
Complex weighted_inner(const Matrix& x, const Matrix& y, const Matrix& w, double s);

/// Von Neumann entropy in nats, eigenvalue floor 1e-14 (0 log 0 = 0).
double von_neumann_entropy(const Matrix& state);

/// F(sigma) = Tr[H sigma] - S(sigma)/beta.
double free_energy(const Matrix& sigma, const Matrix& hamiltonian, double beta);

/// D(sigma || rho); requires rho full rank.
double relative_entropy(const Matrix& sigma, const Matrix& rho);

/// Matrix logarithm of a positive definite state; throws on rank deficiency
/// with guidance to regularize first (no implicit clamping).
Matrix state_log(const Matrix& state, double rank_tol = 1e-12);

/// sigma_delta = (1-delta) sigma + delta rho; returns the regularized state and
/// the log-norm budget Delta_delta = log(1/delta) + ||log rho||.
std::pair<DensityMatrix, double> regularize(const Matrix& sigma, const Matrix& rho, double delta);

// ---------------------------------------------------------------------------
// Entropy production and Fisher information
// ---------------------------------------------------------------------------

/// Dissipative entropy production of a single term: -Tr[L_a[sigma](log sigma - log rho)].
double entropy_production(const LindbladOperator& lind, int a, const Matrix& sigma_lab);

struct EntropyProductionReport {
  std::vector<double> per_jump;  // dissipative EP_a, all >= -1e-10
  double dissipative_total = 0.0;
  double coherent = 0.0;  // i Tr[[H, sigma](log sigma - log rho)]; vanishes identically
};
EntropyProductionReport entropy_production_report(const LindbladOperator& lind,
                                                  const Matrix& sigma_lab);

/// Relative Fisher information of sigma w.r.t. the Gibbs state and jump a:
/// triple integral over (s, omega, t) reduced to Bohr pairs. Equals EP_a.
double fisher_information(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                          const SQuadrature& sq = {});

// ---------------------------------------------------------------------------
// Approximate detailed balance
// ---------------------------------------------------------------------------

/// Detailed-balance error of jump a at state sigma (time-filtered form):
/// integral ||Ahat(w,t) sqrt(sigma) - sqrt(sigma) rho^{-1/2} Ahat(w,t) rho^{1/2}||_2^2
///          gamma(w) g(t) dw dt.
double adb_error(const LindbladOperator& lind, int a, const Matrix& sigma_lab);

/// Same functional through its entropy-gradient representation (s-quadrature
/// with the log-kernel time filter); agrees with adb_error to quadrature error.
double adb_error_entropy_gradient(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                                  const SQuadrature& sq = {});

/// Time-filter-free variant: integral ||...||_2^2 gamma(w) dw.
double adb_error_no_time(const LindbladOperator& lind, int a, const Matrix& sigma_lab);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct AdbFiRecord {
  double adb = 0.0;
  double fisher = 0.0;
  double ep = 0.0;
  double stationarity = 0.0;      // ||L_a[sigma]||_1
  double sqrt_adb = 0.0;
  double log_gap_norm = 0.0;      // ||log sigma - log rho||
  double fisher_log_bound = 0.0;  // FI * (1 + max(0, log(log_gap^2 ||A||^2 / FI)))
};
AdbFiRecord adb_vs_fi_report(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                             const SQuadrature& sq = {});

struct MetastabilityReport {
  std::string state_id;
  double epsilon_meta = 0.0;  // ||L[sigma]||_1
  std::vector<double> ep_per_jump, fi_per_jump, adb_per_jump;
  double free_energy = 0.0;
  double relative_entropy = 0.0;
  double regularization_delta = 0.0;
};
MetastabilityReport metastability_report(const LindbladOperator& lind, const Matrix& sigma_lab,
                                         const Matrix& hamiltonian, const std::string& state_id,
                                         double delta = 0.0, const SQuadrature& sq = {});

}  // namespace metastab
