#include "metastab/pauli.hpp"

#include <algorithm>
#include <stdexcept>

#include "metastab/rng.hpp"

namespace metastab {

char to_char(PauliLetter p) { return "IXYZ"[static_cast<int>(p)]; }

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli letter: ") + c);
  }
}

namespace {

Matrix pauli_matrix(PauliLetter p) {
  Matrix m(2, 2);
  switch (p) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Single-qubit product table: (a, b) -> (letter, phase) with a*b = phase*letter.
std::pair<PauliLetter, Complex> letter_product(PauliLetter a, PauliLetter b) {
  using P = PauliLetter;
  if (a == P::I) return {b, 1.0};
  if (b == P::I) return {a, 1.0};
  if (a == b) return {P::I, 1.0};
  auto cyc = [](P x, P y, P z, P a_, P b_) -> int {
    // +1 if (a_,b_) is a cyclic step (x,y),(y,z),(z,x); -1 for the reverse
    if ((a_ == x && b_ == y) || (a_ == y && b_ == z) || (a_ == z && b_ == x)) return 1;
    return -1;
  };
  int sign = cyc(P::X, P::Y, P::Z, a, b);
  P out = static_cast<P>(6 - static_cast<int>(a) - static_cast<int>(b));  // remaining letter
  return {out, Complex(0, sign)};
}

bool valid_phase(Complex p) {
  auto close = [](Complex a, Complex b) { return std::abs(a - b) < 1e-12; };
  return close(p, 1.0) || close(p, -1.0) || close(p, Complex(0, 1)) || close(p, Complex(0, -1));
}

}  // namespace

PauliString::PauliString(int n, std::vector<PauliLetter> letters, Complex phase)
    : n_(n), letters_(std::move(letters)), phase_(phase) {
  if (static_cast<int>(letters_.size()) != n_)
    throw std::invalid_argument("PauliString: letter count != qubit count");
  if (!valid_phase(phase_)) throw std::invalid_argument("PauliString: phase must be a 4th root of unity");
}

PauliString PauliString::parse(const std::string& s) {
  std::vector<PauliLetter> ls;
  ls.reserve(s.size());
  for (char c : s) ls.push_back(letter_from_char(c));
  return PauliString(static_cast<int>(s.size()), std::move(ls));
}

PauliString PauliString::single(int n, int qubit, PauliLetter p) {
  if (qubit < 0 || qubit >= n) throw std::out_of_range("PauliString::single: qubit index");
  std::vector<PauliLetter> ls(n, PauliLetter::I);
  ls[qubit] = p;
  return PauliString(n, std::move(ls));
}

PauliString PauliString::identity(int n) {
  return PauliString(n, std::vector<PauliLetter>(n, PauliLetter::I));
}

std::set<int> PauliString::support() const {
  std::set<int> s;
  for (int q = 0; q < n_; ++q)
    if (letters_[q] != PauliLetter::I) s.insert(q);
  return s;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (n_ != other.n_) throw std::invalid_argument("PauliString product: size mismatch");
  std::vector<PauliLetter> ls(n_);
  Complex ph = phase_ * other.phase_;
  for (int q = 0; q < n_; ++q) {
    auto [l, p] = letter_product(letters_[q], other.letters_[q]);
    ls[q] = l;
    ph *= p;
  }
  return PauliString(n_, std::move(ls), ph);
}

Matrix PauliString::to_matrix() const {
  // qubit 0 is the most significant index bit
  Matrix m = Matrix::Identity(1, 1);
  for (int q = 0; q < n_; ++q) {
    Matrix p = pauli_matrix(letters_[q]);
    Matrix out(m.rows() * 2, m.cols() * 2);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out.block(i * 2, j * 2, 2, 2) = m(i, j) * p;
    m = std::move(out);
  }
  return phase_ * m;
}

std::string PauliString::to_string() const {
  std::string s;
  if (phase_ == Complex(-1, 0)) s += "-";
  else if (phase_ == Complex(0, 1)) s += "i";
  else if (phase_ == Complex(0, -1)) s += "-i";
  for (auto l : letters_) s += to_char(l);
  return s;
}

// ===========================================================================
// Hamiltonian terms and spec
// ===========================================================================

HamiltonianTerm HamiltonianTerm::from_pauli(const PauliString& p, double coeff) {
  auto sup = p.support();
  if (sup.empty()) throw std::invalid_argument("identity term has no support; fold it into energies");
  if (!p.is_hermitian()) throw std::invalid_argument("Hamiltonian term must be Hermitian");
  // restrict to the support qubits
  std::vector<PauliLetter> ls;
  for (int q : sup) ls.push_back(p.letters()[q]);
  PauliString restricted(static_cast<int>(ls.size()), ls, p.phase());
  HamiltonianTerm t;
  t.support = sup;
  t.block = restricted.to_matrix();
  t.coefficient = coeff;
  t.label = p.to_string();
  return t;
}

HamiltonianTerm HamiltonianTerm::from_block(std::set<int> support, Matrix block, double coeff,
                                            std::string label) {
  HamiltonianTerm t;
  int d = 1 << support.size();
  if (block.rows() != d || block.cols() != d)
    throw std::invalid_argument("block dimension does not match support size");
  if (hermiticity_defect(block) > 1e-12 * std::max(1.0, block.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("Hamiltonian term must be Hermitian");
  t.support = std::move(support);
  t.block = std::move(block);
  t.coefficient = coeff;
  t.label = std::move(label);
  return t;
}

HamiltonianSpec::HamiltonianSpec(int n, std::vector<HamiltonianTerm> terms)
    : n_(n), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.support.empty() || *t.support.rbegin() >= n_)
      throw std::invalid_argument("term support outside register");
    if (operator_norm(t.block) > 1.0 + 1e-9)
      throw std::invalid_argument("term norm exceeds 1; renormalize coefficients");
  }
}

Matrix embed_on_support(const Matrix& block, const std::set<int>& support, int n) {
  // Kronecker embedding: walk qubits left to right, inserting block factors
  // via index arithmetic. Row/col bits of qubit q sit at bit (n-1-q).
  int dim = 1 << n;
  std::vector<int> sup(support.begin(), support.end());
  int k = static_cast<int>(sup.size());
  Matrix out = Matrix::Zero(dim, dim);
  int rest = n - k;
  int dim_rest = 1 << rest;
  std::vector<int> rest_qubits;
  for (int q = 0; q < n; ++q)
    if (!support.count(q)) rest_qubits.push_back(q);

  auto scatter = [&](int sup_idx, int rest_idx) {
    int full = 0;
    for (int b = 0; b < k; ++b)
      if (sup_idx & (1 << (k - 1 - b))) full |= 1 << (n - 1 - sup[b]);
    for (int b = 0; b < rest; ++b)
      if (rest_idx & (1 << (rest - 1 - b))) full |= 1 << (n - 1 - rest_qubits[b]);
    return full;
  };

  int dsup = 1 << k;
  for (int i = 0; i < dsup; ++i)
    for (int j = 0; j < dsup; ++j) {
      if (block(i, j) == Complex(0, 0)) continue;
      for (int r = 0; r < dim_rest; ++r) out(scatter(i, r), scatter(j, r)) = block(i, j);
    }
  return out;
}

Matrix HamiltonianSpec::assemble_dense(int max_qubits) const {
  if (n_ > max_qubits)
    throw std::length_error("assemble_dense: qubit count exceeds the configured cap");
  Matrix h = Matrix::Zero(dim(), dim());
  for (const auto& t : terms_) h += t.coefficient * embed_on_support(t.block, t.support, n_);
  if (hermiticity_defect(h) > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::runtime_error("assembled Hamiltonian is not Hermitian");
  return h;
}

int HamiltonianSpec::interaction_degree() const {
  int d = 0;
  for (std::size_t a = 0; a < terms_.size(); ++a) {
    int deg = 0;
    for (std::size_t b = 0; b < terms_.size(); ++b) {
      bool overlap = false;
      for (int q : terms_[a].support)
        if (terms_[b].support.count(q)) { overlap = true; break; }
      if (overlap) ++deg;
    }
    d = std::max(d, deg);
  }
  return d;
}

std::vector<int> HamiltonianSpec::crossing_terms(const std::set<int>& region) const {
  std::vector<int> out;
  for (std::size_t g = 0; g < terms_.size(); ++g) {
    bool in = false, outside = false;
    for (int q : terms_[g].support) (region.count(q) ? in : outside) = true;
    if (in && outside) out.push_back(static_cast<int>(g));
  }
  return out;
}

std::vector<PauliString> single_qubit_jump_set(int n, const std::set<int>& region) {
  std::vector<PauliString> jumps;
  for (int q : region) {
    jumps.push_back(PauliString::single(n, q, PauliLetter::X));
    jumps.push_back(PauliString::single(n, q, PauliLetter::Y));
    jumps.push_back(PauliString::single(n, q, PauliLetter::Z));
  }
  return jumps;
}

// ===========================================================================
// Presets
// ===========================================================================

HamiltonianSpec ising_chain(int n) {
  if (n < 2) throw std::invalid_argument("ising_chain: need n >= 2");
  std::vector<HamiltonianTerm> terms;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<PauliLetter> ls(n, PauliLetter::I);
    ls[i] = PauliLetter::Z;
    ls[i + 1] = PauliLetter::Z;
    terms.push_back(HamiltonianTerm::from_pauli(PauliString(n, ls), 1.0));
  }
  HamiltonianSpec h(n, std::move(terms));
  h.set_description("ising_chain(n=" + std::to_string(n) + ")");
  return h;
}

HamiltonianSpec transverse_ising_chain(int n, double field) {
  auto base = ising_chain(n);
  auto terms = base.terms();
  for (int i = 0; i < n; ++i)
    terms.push_back(HamiltonianTerm::from_pauli(PauliString::single(n, i, PauliLetter::X), field));
  HamiltonianSpec h(n, std::move(terms));
  h.set_description("transverse_ising_chain(n=" + std::to_string(n) +
                    ",g=" + std::to_string(field) + ")");
  return h;
}

HamiltonianSpec single_qubit_z() {
  std::vector<HamiltonianTerm> terms;
  terms.push_back(HamiltonianTerm::from_pauli(PauliString::parse("Z"), 1.0));
  HamiltonianSpec h(1, std::move(terms));
  h.set_description("single_qubit");
  return h;
}

HamiltonianSpec random_2local(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_2local: need n >= 2");
  std::vector<HamiltonianTerm> terms;
  for (int i = 0; i + 1 < n; ++i) {
    SplitMix64 g(derive_seed(seed, "random_2local", static_cast<std::uint64_t>(i)));
    Matrix block = random_hermitian(4, g);
    block -= Matrix::Identity(4, 4) * (block.trace() / 4.0);  // traceless
    block /= operator_norm(block);
    terms.push_back(HamiltonianTerm::from_block({i, i + 1}, block, 1.0,
                                                "rand2(" + std::to_string(i) + ")"));
  }
  HamiltonianSpec h(n, std::move(terms));
  h.set_description("random_2local(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
  return h;
}

}  // namespace metastab
