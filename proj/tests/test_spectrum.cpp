#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "metastab/rng.hpp"
#include "metastab/spectrum.hpp"

using namespace metastab;

TEST_CASE("Z spectrum and Bohr frequencies") {
  Spectrum s(single_qubit_z().assemble_dense());
  REQUIRE(s.num_groups() == 2);
  CHECK(s.energies()[0] == doctest::Approx(-1.0));
  CHECK(s.energies()[1] == doctest::Approx(1.0));
  REQUIRE(s.bohr_frequencies().size() == 3);
  CHECK(s.bohr_frequencies()[0] == doctest::Approx(-2.0));
  CHECK(s.bohr_frequencies()[1] == doctest::Approx(0.0));
  CHECK(s.bohr_frequencies()[2] == doctest::Approx(2.0));
}

TEST_CASE("ZZ spectrum: two doubly degenerate energies") {
  Spectrum s(ising_chain(2).assemble_dense());
  REQUIRE(s.num_groups() == 2);
  CHECK(s.energies()[0] == doctest::Approx(-1.0));
  CHECK(s.energies()[1] == doctest::Approx(1.0));
  CHECK(s.bohr_frequencies().size() == 3);  // {-2, 0, 2}
  // projector completeness and orthogonality
  Matrix p0 = s.projector(0), p1 = s.projector(1);
  CHECK((p0 + p1 - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p0 * p1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p0 * p0 - p0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reconstruction and completeness on a random 3-qubit model") {
  Matrix h = random_2local(3, 5).assemble_dense();
  Spectrum s(h);
  CHECK((s.reconstruct() - h).cwiseAbs().maxCoeff() < 1e-12 * s.norm());
  Matrix acc = Matrix::Zero(8, 8);
  for (int g = 0; g < s.num_groups(); ++g) acc += s.projector(g);
  CHECK((acc - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  // Bohr set contains 0 and is symmetric under negation
  const auto& b = s.bohr_frequencies();
  bool has_zero = false;
  for (double nu : b) {
    if (std::abs(nu) < 1e-12) has_zero = true;
    bool found = false;
    for (double mu : b)
      if (std::abs(mu + nu) < 1e-9) found = true;
    CHECK(found);
  }
  CHECK(has_zero);
}

TEST_CASE("gibbs state basics") {
  Spectrum s(ising_chain(2).assemble_dense());
  SUBCASE("beta = 0 is maximally mixed") {
    auto rho = gibbs_state(s, 0.0);
    CHECK((rho.matrix - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("two-level Boltzmann weights by hand") {
    Spectrum sz(single_qubit_z().assemble_dense());
    auto rho = gibbs_state(sz, 1.0);
    double z = std::exp(-1.0) + std::exp(1.0);
    CHECK(rho.matrix(0, 0).real() == doctest::Approx(std::exp(-1.0) / z));
    CHECK(rho.matrix(1, 1).real() == doctest::Approx(std::exp(1.0) / z));
  }
  SUBCASE("large beta concentrates on the ground space") {
    Matrix h = random_2local(2, 9).assemble_dense();
    Spectrum sr(h);
    auto rho = gibbs_state(sr, 200.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("negative beta is rejected") { CHECK_THROWS(gibbs_state(s, -0.1)); }
}

TEST_CASE("gibbs state commutes with H") {
  Matrix h = random_2local(3, 21).assemble_dense();
  Spectrum s(h);
  auto rho = gibbs_state(s, 1.7);
  Matrix comm = h * rho.matrix - rho.matrix * h;
  CHECK(operator_norm(comm) < 1e-10 * s.norm());
}

TEST_CASE("partition function agrees with scaling-and-squaring exponential") {
  Matrix h = random_2local(3, 33).assemble_dense();
  Spectrum s(h);
  for (double beta : {0.5, 1.0, 2.0}) {
    double via_spec = std::exp(log_partition_function(s, beta));
    double via_expm = Matrix((-beta * h).exp()).trace().real();
    CHECK(std::abs(via_spec - via_expm) < 1e-10 * via_expm);
  }
}

TEST_CASE("density matrix validation catches violations") {
  DensityMatrix good(Matrix::Identity(2, 2) / 2.0);
  CHECK_NOTHROW(good.validate());
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS(DensityMatrix(neg).validate());
}

TEST_CASE("degenerate energies are merged at the grouping tolerance") {
  RealVector d(4);
  d << -1.0, -1.0 + 1e-12, 1.0, 1.0;
  Spectrum s(Matrix(d.cast<Complex>().asDiagonal()));
  CHECK(s.num_groups() == 2);
}
