#include "metastab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metastab {

Spectrum::Spectrum(const Matrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("Spectrum: square matrix required");
  if (hermiticity_defect(h) > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("Spectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("Spectrum: eigensolver failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();

  const int d = dim();
  double scale = std::max(std::abs(eigenvalues_[0]), std::abs(eigenvalues_[d - 1]));
  double tau = 1e-9 * std::max(scale, 1e-300);

  group_of_.resize(d);
  std::vector<std::pair<double, int>> acc;  // running (sum, count) per group
  for (int i = 0; i < d; ++i) {
    if (!acc.empty() && std::abs(eigenvalues_[i] - acc.back().first / acc.back().second) <= tau) {
      acc.back().first += eigenvalues_[i];
      acc.back().second += 1;
    } else {
      acc.push_back({eigenvalues_[i], 1});
    }
    group_of_[i] = static_cast<int>(acc.size()) - 1;
  }
  group_energy_.reserve(acc.size());
  for (auto& [sum, cnt] : acc) group_energy_.push_back(sum / cnt);

  // Bohr frequencies: distinct pairwise differences of grouped energies.
  std::vector<double> diffs;
  diffs.reserve(group_energy_.size() * group_energy_.size());
  for (double a : group_energy_)
    for (double b : group_energy_) diffs.push_back(a - b);
  std::sort(diffs.begin(), diffs.end());
  for (double v : diffs) {
    if (bohr_.empty() || std::abs(v - bohr_.back()) > tau) bohr_.push_back(v);
  }
}

Matrix Spectrum::projector(int g) const {
  Matrix p = Matrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (group_of_[i] == g) p += eigenvectors_.col(i) * eigenvectors_.col(i).adjoint();
  return p;
}

Matrix Spectrum::reconstruct() const {
  RealVector grouped(dim());
  for (int i = 0; i < dim(); ++i) grouped[i] = energy_of(i);
  return eigenvectors_ * grouped.asDiagonal() * eigenvectors_.adjoint();
}

DensityMatrix::DensityMatrix(Matrix m) : matrix(std::move(m)) {
  trace = matrix.trace().real();
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
  min_eigenvalue = es.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double tol_herm, double tol_trace, double tol_psd) const {
  if (hermiticity_defect(matrix) > tol_herm) throw std::runtime_error("state is not Hermitian");
  if (std::abs(trace - 1.0) > tol_trace) throw std::runtime_error("state trace differs from 1");
  if (min_eigenvalue < -tol_psd) throw std::runtime_error("state has a negative eigenvalue");
}

RealVector gibbs_diagonal(const Spectrum& s, double beta) {
  if (beta < 0.0) throw std::invalid_argument("gibbs_state: beta must be >= 0");
  // subtract the ground energy before exponentiating
  double e0 = s.eigenvalues().minCoeff();
  RealVector w = (-beta * (s.eigenvalues().array() - e0)).exp();
  return w / w.sum();
}

DensityMatrix gibbs_state(const Spectrum& s, double beta) {
  RealVector w = gibbs_diagonal(s, beta);
  return DensityMatrix(s.eigenvectors() * w.asDiagonal() * s.eigenvectors().adjoint());
}

double log_partition_function(const Spectrum& s, double beta) {
  double e0 = s.eigenvalues().minCoeff();
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) acc += std::exp(-beta * (s.eigenvalues()[i] - e0));
  return std::log(acc) - beta * e0;
}

}  // namespace metastab
