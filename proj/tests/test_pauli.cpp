#include <doctest.h>

#include "metastab/pauli.hpp"
#include "metastab/rng.hpp"

using namespace metastab;

TEST_CASE("single-qubit product table closes with the right phases") {
  auto x = PauliString::parse("X"), y = PauliString::parse("Y"), z = PauliString::parse("Z");
  CHECK((x * y).to_string() == "iZ");
  CHECK((y * x).to_string() == "-iZ");
  CHECK((y * z).to_string() == "iX");
  CHECK((z * x).to_string() == "iY");
  CHECK((x * x).to_string() == "I");
}

TEST_CASE("product closure on all 2-qubit pairs matches dense matrices") {
  std::vector<PauliString> all;
  for (char a : {'I', 'X', 'Y', 'Z'})
    for (char b : {'I', 'X', 'Y', 'Z'}) all.push_back(PauliString::parse(std::string{a, b}));
  for (const auto& p : all)
    for (const auto& q : all) {
      Matrix direct = p.to_matrix() * q.to_matrix();
      Matrix algebraic = (p * q).to_matrix();
      CHECK((direct - algebraic).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("hermitian square is the identity times the phase squared") {
  auto p = PauliString::parse("XZY");
  Matrix sq = (p * p).to_matrix();
  CHECK((sq - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(p.support() == std::set<int>{0, 1, 2});
}

TEST_CASE("dense assembly of named examples") {
  // H = Z on one qubit
  Matrix hz = single_qubit_z().assemble_dense();
  CHECK(hz(0, 0) == Complex(1, 0));
  CHECK(hz(1, 1) == Complex(-1, 0));
  // zero terms give the zero matrix
  HamiltonianSpec empty(2, {});
  CHECK(empty.assemble_dense().cwiseAbs().maxCoeff() == 0.0);
  // 2-qubit ZZ is diag(1,-1,-1,1), the hand Kronecker product
  Matrix hzz = ising_chain(2).assemble_dense();
  RealVector diag(4);
  diag << 1, -1, -1, 1;
  for (int i = 0; i < 4; ++i) CHECK(hzz(i, i).real() == doctest::Approx(diag[i]));
  CHECK((hzz - Matrix(diag.cast<Complex>().asDiagonal())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dimension cap and non-Hermitian terms are rejected") {
  CHECK_THROWS_AS(ising_chain(11).assemble_dense(10), std::length_error);
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(HamiltonianTerm::from_block({0}, bad, 1.0), std::invalid_argument);
  Matrix big = 3.0 * PauliString::parse("Z").to_matrix();
  CHECK_THROWS_AS(HamiltonianSpec(1, {HamiltonianTerm::from_block({0}, big, 1.0)}),
                  std::invalid_argument);
}

TEST_CASE("interaction degree") {
  CHECK(single_qubit_z().interaction_degree() == 1);
  // 1D nearest-neighbor chain: an interior edge overlaps itself and 2 neighbors
  CHECK(ising_chain(5).interaction_degree() == 3);
  // two disjoint-support terms
  std::vector<HamiltonianTerm> terms;
  terms.push_back(HamiltonianTerm::from_pauli(PauliString::parse("ZIII"), 1.0));
  terms.push_back(HamiltonianTerm::from_pauli(PauliString::parse("IIZI"), 1.0));
  CHECK(HamiltonianSpec(4, terms).interaction_degree() == 1);
}

TEST_CASE("single-qubit jump sets") {
  auto a0 = single_qubit_jump_set(2, {0});
  REQUIRE(a0.size() == 3);
  CHECK(a0[0].to_string() == "XI");
  CHECK(a0[1].to_string() == "YI");
  CHECK(a0[2].to_string() == "ZI");
  CHECK(single_qubit_jump_set(2, {}).empty());
  CHECK(single_qubit_jump_set(3, {0, 1, 2}).size() == 9);
}

TEST_CASE("embedding places blocks on the right qubits") {
  // X on qubit 1 of 2 acts on the low-order basis bit
  Matrix x1 = embed_on_support(PauliString::parse("X").to_matrix(), {1}, 2);
  Matrix ref = PauliString::parse("IX").to_matrix();
  CHECK((x1 - ref).cwiseAbs().maxCoeff() < 1e-15);
  // random 2-local block embedded on {0,2} of 3 is Hermitian and norm-preserved
  SplitMix64 g(3);
  Matrix b = random_hermitian(4, g);
  b /= operator_norm(b);
  Matrix e = embed_on_support(b, {0, 2}, 3);
  CHECK(hermiticity_defect(e) < 1e-14);
  CHECK(operator_norm(e) == doctest::Approx(1.0));
}

TEST_CASE("random 2-local preset is reproducible and normalized") {
  auto h1 = random_2local(3, 11);
  auto h2 = random_2local(3, 11);
  auto h3 = random_2local(3, 12);
  CHECK((h1.assemble_dense() - h2.assemble_dense()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h1.assemble_dense() - h3.assemble_dense()).cwiseAbs().maxCoeff() > 1e-3);
  for (const auto& t : h1.terms()) CHECK(operator_norm(t.block) == doctest::Approx(1.0));
}
