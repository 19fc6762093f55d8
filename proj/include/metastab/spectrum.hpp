#pragma once

#include <memory>
#include <vector>

#include "metastab/pauli.hpp"
#include "metastab/types.hpp"

namespace metastab {

/// Full eigendecomposition of a Hamiltonian with energies grouped into
/// degenerate clusters (tolerance 1e-9 * ||H||) and the induced set of
/// Bohr frequencies (distinct energy differences, 0 always included).
class Spectrum {
 public:
  explicit Spectrum(const Matrix& hamiltonian);
  static Spectrum diagonalize(const HamiltonianSpec& h, int max_qubits = 10) {
    return Spectrum(h.assemble_dense(max_qubits));
  }

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  int num_groups() const { return static_cast<int>(group_energy_.size()); }

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  /// Distinct (grouped) energies, ascending.
  const std::vector<double>& energies() const { return group_energy_; }
  /// Group id of each eigenvector column.
  const std::vector<int>& group_of() const { return group_of_; }
  /// Grouped energy of eigenvector column i.
  double energy_of(int i) const { return group_energy_[group_of_[i]]; }
  /// Sorted distinct Bohr frequencies.
  const std::vector<double>& bohr_frequencies() const { return bohr_; }

  /// Projector onto the eigenspace of energy group g (lab basis).
  Matrix projector(int g) const;

  /// Change of basis helpers.
  Matrix to_eigenbasis(const Matrix& lab) const { return eigenvectors_.adjoint() * lab * eigenvectors_; }
  Matrix to_lab(const Matrix& eig) const { return eigenvectors_ * eig * eigenvectors_.adjoint(); }

  /// Reconstruction sum_E E P_E in the lab basis.
  Matrix reconstruct() const;

  double norm() const { return std::max(std::abs(eigenvalues_[0]), std::abs(eigenvalues_[dim() - 1])); }

 private:
  RealVector eigenvalues_;
  Matrix eigenvectors_;
  std::vector<double> group_energy_;
  std::vector<int> group_of_;
  std::vector<double> bohr_;
};

/// Density matrix with cached diagnostics.
struct DensityMatrix {
  Matrix matrix;
  double min_eigenvalue = 0.0;
  double trace = 0.0;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m);

  int dim() const { return static_cast<int>(matrix.rows()); }
  /// Hermitian/trace/positivity sanity with the given tolerances.
  void validate(double tol_herm = 1e-9, double tol_trace = 1e-9, double tol_psd = 1e-8) const;
};

/// Gibbs state exp(-beta H)/Z from a spectrum. beta >= 0.
DensityMatrix gibbs_state(const Spectrum& s, double beta);

/// Gibbs weights exp(-beta E_i)/Z over eigenvector columns (eigenbasis diagonal).
RealVector gibbs_diagonal(const Spectrum& s, double beta);

/// log(Tr exp(-beta H)) via the spectrum, stable log-sum-exp.
double log_partition_function(const Spectrum& s, double beta);

}  // namespace metastab
