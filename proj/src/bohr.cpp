#include "metastab/bohr.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "metastab/quadrature.hpp"

namespace metastab {

BohrDecomposition::BohrDecomposition(const Matrix& a, const Spectrum& spec)
    : spec_(&spec), a_eig_(spec.to_eigenbasis(a)) {
  if (a.rows() != spec.dim() || a.cols() != spec.dim())
    throw std::invalid_argument("BohrDecomposition: dimension mismatch");
}

std::vector<double> BohrDecomposition::active_frequencies(double tol) const {
  const auto& s = *spec_;
  std::vector<double> out;
  for (double nu : s.bohr_frequencies()) {
    double mx = 0.0;
    for (int i = 0; i < s.dim(); ++i)
      for (int j = 0; j < s.dim(); ++j)
        if (std::abs((s.energy_of(i) - s.energy_of(j)) - nu) < 1e-12 + 1e-9 * std::abs(nu))
          mx = std::max(mx, std::abs(a_eig_(i, j)));
    if (mx > tol) out.push_back(nu);
  }
  return out;
}

Matrix BohrDecomposition::component_eig(double nu) const {
  const auto& s = *spec_;
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      if (std::abs((s.energy_of(i) - s.energy_of(j)) - nu) < 1e-12 + 1e-9 * std::abs(nu))
        out(i, j) = a_eig_(i, j);
  return out;
}

Matrix BohrDecomposition::component(double nu) const { return spec_->to_lab(component_eig(nu)); }

Matrix BohrDecomposition::reconstruct() const {
  Matrix acc = Matrix::Zero(spec_->dim(), spec_->dim());
  for (double nu : spec_->bohr_frequencies()) acc += component_eig(nu);
  return spec_->to_lab(acc);
}

Matrix BohrDecomposition::heisenberg_eig(double t) const {
  const auto& s = *spec_;
  Matrix out(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      out(i, j) = std::exp(kI * ((s.energy_of(i) - s.energy_of(j)) * t)) * a_eig_(i, j);
  return out;
}

Matrix BohrDecomposition::heisenberg(double t) const { return spec_->to_lab(heisenberg_eig(t)); }

Matrix BohrDecomposition::operator_ft_eig(const FilterParams& fp, double omega) const {
  const auto& s = *spec_;
  Matrix out(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      out(i, j) = a_eig_(i, j) * gaussian_freq_filter(fp, omega - (s.energy_of(i) - s.energy_of(j)));
  return out;
}

Matrix BohrDecomposition::operator_ft(const FilterParams& fp, double omega) const {
  return spec_->to_lab(operator_ft_eig(fp, omega));
}

double BohrDecomposition::hermiticity_transport_defect(const FilterParams& fp, double omega) const {
  BohrDecomposition adj(spec_->to_lab(Matrix(a_eig_.adjoint())), *spec_);
  Matrix lhs = operator_ft_eig(fp, omega).adjoint();
  Matrix rhs = adj.operator_ft_eig(fp, -omega);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double imaginary_time_conjugation_residual(const BohrDecomposition& a, const FilterParams& fp,
                                           double omega, double b) {
  const auto& s = a.spectrum();
  RealVector e = RealVector(s.dim());
  for (int i = 0; i < s.dim(); ++i) e[i] = s.energy_of(i);
  Matrix expp = (b * e.array()).exp().matrix().cast<Complex>().asDiagonal();
  Matrix expm = (-b * e.array()).exp().matrix().cast<Complex>().asDiagonal();
  Matrix lhs = expp * a.operator_ft_eig(fp, omega) * expm;
  double sg = fp.sigma;
  Matrix rhs = std::exp(b * omega + sg * sg * b * b) *
               a.operator_ft_eig(fp, omega + 2.0 * sg * sg * b);
  double scale = std::max(lhs.cwiseAbs().maxCoeff(), 1e-300);
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

double sum_over_energies_residual(const BohrDecomposition& a, const FilterParams& fp,
                                  double quad_tol) {
  const auto& s = a.spectrum();
  // integral fhat(w - nu) dw by adaptive quadrature, one scalar per frequency
  double span = 14.0 * fp.sigma;
  auto one = [&](double nu) {
    return adaptive_integrate([&](double w) { return gaussian_freq_filter(fp, w - nu); },
                              nu - span, nu + span, quad_tol);
  };
  Matrix acc = Matrix::Zero(s.dim(), s.dim());
  const Matrix& ae = a.in_eigenbasis();
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      acc(i, j) = ae(i, j) * one(s.energy_of(i) - s.energy_of(j));
  acc /= std::sqrt(2.0 * fp.sigma * std::sqrt(2.0 * M_PI));
  return (acc - ae).cwiseAbs().maxCoeff();
}

std::map<std::pair<double, double>, Matrix> double_bohr(const Matrix& a, const Spectrum& s1,
                                                        const Spectrum& s2) {
  std::map<std::pair<double, double>, Matrix> table;
  BohrDecomposition d1(a, s1);
  for (double nu1 : d1.active_frequencies(1e-14)) {
    BohrDecomposition d2(d1.component(nu1), s2);
    for (double nu2 : d2.active_frequencies(1e-14)) table[{nu1, nu2}] = d2.component(nu2);
  }
  return table;
}

double double_bohr_residual(const Matrix& a, const Spectrum& s1, const Spectrum& s2, Complex z) {
  Matrix h1 = s1.reconstruct(), h2 = s2.reconstruct();
  Matrix lhs = (z * h2).exp() * (-z * h1).exp() * a * (z * h1).exp() * (-z * h2).exp();
  Matrix rhs = Matrix::Zero(a.rows(), a.cols());
  for (const auto& [key, comp] : double_bohr(a, s1, s2))
    rhs += comp * std::exp(z * (key.second - key.first));
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1e-300, lhs.cwiseAbs().maxCoeff());
}

double convolve_ft_residual(const BohrDecomposition& a, double beta, double sigma1, double sigma2,
                            double omega) {
  const auto& s = a.spectrum();
  double sigma3 = std::hypot(sigma1, sigma2);
  (void)beta;
  FilterParams f3(1.0 / sigma3, sigma3);
  Matrix lhs = a.operator_ft_eig(f3, omega);
  double pref = std::sqrt(sigma3 * std::sqrt(M_PI / 2.0)) / std::sqrt(sigma1 * sigma2);
  double span = 14.0 * (sigma1 + sigma2);
  auto coeff = [&](double nu) {
    return pref * adaptive_integrate(
                      [&](double wp) {
                        return gaussian_freq_filter(sigma1, wp - nu) *
                               gaussian_freq_filter(sigma2, omega - wp);
                      },
                      std::min(nu, omega) - span, std::max(nu, omega) + span, 1e-13);
  };
  Matrix rhs(s.dim(), s.dim());
  const Matrix& ae = a.in_eigenbasis();
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) rhs(i, j) = ae(i, j) * coeff(s.energy_of(i) - s.energy_of(j));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

namespace {
Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}
}  // namespace

double twirl_ft_residual(const BohrDecomposition& a, double beta, double sigma1, double sigma2,
                         double omega) {
  const auto& s = a.spectrum();
  double sigma3 = sigma1 * sigma2 / std::hypot(sigma1, sigma2);  // 1/s3^2 = 1/s1^2 + 1/s2^2
  (void)beta;

  std::vector<double> nus;
  for (double nu : s.bohr_frequencies()) nus.push_back(nu);
  const int d = s.dim();
  Matrix lhs = Matrix::Zero(d * d, d * d), rhs = Matrix::Zero(d * d, d * d);
  double span = 14.0 * (sigma2 + sigma3);
  for (double n1 : nus) {
    Matrix a1 = a.component_eig(n1);
    if (a1.cwiseAbs().maxCoeff() == 0.0) continue;
    for (double n2 : nus) {
      Matrix a2 = a.component_eig(n2);
      if (a2.cwiseAbs().maxCoeff() == 0.0) continue;
      Matrix kr = kronecker(a1, Matrix(a2.adjoint()));
      // time side: exact Gaussian integral of f_{s2}(t)^2 e^{i(n1-n2)t}
      double ct = gaussian_freq_filter(sigma1, omega - n1) * gaussian_freq_filter(sigma1, omega - n2) *
                  std::exp(-(n1 - n2) * (n1 - n2) / (8.0 * sigma2 * sigma2));
      // frequency side: adaptive quadrature of fhat_{s2}(w-w')^2 fhat_{s3}(w'-n1) fhat_{s3}(w'-n2)
      double lo = std::min({omega, n1, n2}) - span, hi = std::max({omega, n1, n2}) + span;
      double cw = adaptive_integrate(
          [&](double wp) {
            double g2 = gaussian_freq_filter(sigma2, omega - wp);
            return g2 * g2 * gaussian_freq_filter(sigma3, wp - n1) *
                   gaussian_freq_filter(sigma3, wp - n2);
          },
          lo, hi, 1e-13);
      lhs += ct * kr;
      rhs += cw * kr;
    }
  }
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::pair<double, double> parseval_bound_check(const std::vector<Matrix>& jumps,
                                               const Spectrum& spec, const FilterParams& fp,
                                               const std::function<double(double)>& weight,
                                               double weight_sup) {
  const int d = spec.dim();
  Matrix lhs_op = Matrix::Zero(d, d), rhs_op = Matrix::Zero(d, d);
  double span = 14.0 * fp.sigma;
  for (const auto& jump : jumps) {
    BohrDecomposition dec(jump, spec);
    const Matrix& ae = dec.in_eigenbasis();
    // sum_{nu1,nu2} coeff(nu1,nu2) A_{nu2}^dag A_{nu1}, coeff by quadrature
    Matrix acc = Matrix::Zero(d, d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        Complex v(0, 0);
        for (int j = 0; j < d; ++j) {
          double n1 = spec.energy_of(j) - spec.energy_of(q);
          double n2 = spec.energy_of(j) - spec.energy_of(p);
          double lo = std::min(n1, n2) - span, hi = std::max(n1, n2) + span;
          double c = adaptive_integrate(
              [&](double w) {
                return weight(w) * gaussian_freq_filter(fp, w - n1) * gaussian_freq_filter(fp, w - n2);
              },
              lo, hi, 1e-12);
          v += std::conj(ae(j, p)) * ae(j, q) * c;
        }
        acc(p, q) = v;
      }
    lhs_op += acc;
    rhs_op += Matrix(jump.adjoint() * jump);
  }
  return {operator_norm(lhs_op), weight_sup * operator_norm(rhs_op)};
}

}  // namespace metastab
