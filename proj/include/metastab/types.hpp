#pragma once

#include <complex>
#include <Eigen/Dense>

namespace metastab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

/// Schatten 1-norm (sum of singular values).
inline double trace_norm(const Matrix& m) {
  return m.jacobiSvd().singularValues().sum();
}

/// Operator (spectral) norm.
inline double operator_norm(const Matrix& m) {
  return m.jacobiSvd().singularValues().maxCoeff();
}

inline double frobenius_norm(const Matrix& m) { return m.norm(); }

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace metastab
