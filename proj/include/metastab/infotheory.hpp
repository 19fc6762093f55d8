#pragma once

#include <set>
#include <vector>

#include "metastab/pauli.hpp"
#include "metastab/types.hpp"

namespace metastab {

/// Region / complement split of the register with the cut-crossing terms.
struct Bipartition {
  int n = 0;
  std::set<int> region;      // A
  std::set<int> complement;  // filled by make_bipartition

  static Bipartition make(int n, std::set<int> region);
};

/// Partial trace keeping the qubits in `keep` (ascending order in the output).
Matrix partial_trace(const Matrix& state, int n, const std::set<int>& keep);

/// I(A:B) = S(A) + S(B) - S(AB), nats.
double mutual_information(const Matrix& state, const Bipartition& cut);

/// Operator norm of the sum of terms crossing the cut.
double boundary_norm(const HamiltonianSpec& h, const Bipartition& cut);

/// Both sides of the exact decomposition
///   beta F(sigma) - beta F(sigma_B (x) sigma_A) = I(A:B) + beta Tr[dH (sigma - sigma_B (x) sigma_A)].
struct FreeEnergyDecomposition {
  double lhs = 0.0;               // beta (F(sigma) - F(product))
  double mutual_information = 0;  // nats
  double boundary_energy = 0.0;   // beta Tr[dH (sigma - product)]
  double residual = 0.0;          // lhs - (mi + boundary_energy)
};
FreeEnergyDecomposition free_energy_decomposition(const Matrix& sigma, const Bipartition& cut,
                                                  const HamiltonianSpec& h, double beta);

/// One row of the area-law audit for a cut.
struct AreaLawRow {
  std::string cut_label;
  double mi_nats = 0.0;
  double mi_bits = 0.0;
  double bound = 0.0;  // 2 beta ||dH|| (+ recovery correction when supplied)
  double slack = 0.0;
  bool pass = false;
};

/// Audits I(A:B) <= 2 beta ||dH|| + 4 e max(log(1/e), beta ||H||, n) per cut,
/// with e the measured recovery error (0 for the Gibbs rows).
std::vector<AreaLawRow> area_law_audit(const Matrix& sigma, const HamiltonianSpec& h, double beta,
                                       const std::vector<std::set<int>>& cuts,
                                       double recovery_error);

}  // namespace metastab
