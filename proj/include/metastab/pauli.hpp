#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "metastab/types.hpp"

namespace metastab {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter p);
PauliLetter letter_from_char(char c);

/// Tensor product of single-qubit Paulis with a unit phase in {1, -1, i, -i}.
/// Qubit 0 is the leftmost tensor factor.
class PauliString {
 public:
  PauliString(int n, std::vector<PauliLetter> letters, Complex phase = 1.0);

  /// Parse from a letter string like "ZZI" (one letter per qubit).
  static PauliString parse(const std::string& letters);
  /// Single non-identity letter at one qubit.
  static PauliString single(int n, int qubit, PauliLetter p);
  static PauliString identity(int n);

  int num_qubits() const { return n_; }
  Complex phase() const { return phase_; }
  const std::vector<PauliLetter>& letters() const { return letters_; }
  std::set<int> support() const;
  bool is_hermitian() const { return phase_.imag() == 0.0; }

  PauliString operator*(const PauliString& other) const;

  /// Dense 2^n x 2^n matrix (including the phase).
  Matrix to_matrix() const;
  std::string to_string() const;

  bool same_letters(const PauliString& other) const { return letters_ == other.letters_; }

 private:
  int n_;
  std::vector<PauliLetter> letters_;
  Complex phase_;
};

/// One few-body Hamiltonian term: either a PauliString or a dense Hermitian
/// block on an explicit support, with a real coefficient. Term norm <= 1.
struct HamiltonianTerm {
  std::set<int> support;
  Matrix block;  // dense 2^{|support|} block in ascending-qubit order
  double coefficient = 1.0;
  std::string label;

  static HamiltonianTerm from_pauli(const PauliString& p, double coeff);
  static HamiltonianTerm from_block(std::set<int> support, Matrix block, double coeff,
                                    std::string label = "block");
};

/// Few-body Hamiltonian on n qubits with normalized terms.
class HamiltonianSpec {
 public:
  HamiltonianSpec(int n, std::vector<HamiltonianTerm> terms);

  int num_qubits() const { return n_; }
  int dim() const { return 1 << n_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  /// Dense assembly sum_g coeff_g * embed(block_g). Throws past the qubit cap.
  Matrix assemble_dense(int max_qubits = 10) const;

  /// Max over terms of the number of terms (self included) with overlapping
  /// support; isolated terms count themselves.
  int interaction_degree() const;

  /// Terms whose support intersects both sides of a cut.
  std::vector<int> crossing_terms(const std::set<int>& region) const;

  std::string description() const { return description_; }
  void set_description(std::string d) { description_ = std::move(d); }

 private:
  int n_;
  std::vector<HamiltonianTerm> terms_;
  std::string description_;
};

/// {X_i, Y_i, Z_i} for every qubit i in the region.
std::vector<PauliString> single_qubit_jump_set(int n, const std::set<int>& region);

/// Embed an operator on `support` (ascending order) into the full register.
Matrix embed_on_support(const Matrix& block, const std::set<int>& support, int n);

// Presets -------------------------------------------------------------------

/// Open chain of unit-coupling ZZ terms.
HamiltonianSpec ising_chain(int n);
/// Ising chain with a uniform transverse field.
HamiltonianSpec transverse_ising_chain(int n, double field);
/// H = Z on one qubit.
HamiltonianSpec single_qubit_z();
/// Random 2-local model: one normalized GUE block per adjacent pair.
HamiltonianSpec random_2local(int n, std::uint64_t seed);

}  // namespace metastab
