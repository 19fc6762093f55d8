#pragma once

#include <map>
#include <vector>

#include "metastab/filters.hpp"
#include "metastab/spectrum.hpp"

namespace metastab {

/// Decomposition of an operator into Bohr-frequency components
/// A_nu = sum_{E2 - E1 = nu} P_{E2} A P_{E1}. Stored once in the Hamiltonian
/// eigenbasis; components and evolved operators are assembled on demand.
class BohrDecomposition {
 public:
  BohrDecomposition(const Matrix& a, const Spectrum& spec);

  const Spectrum& spectrum() const { return *spec_; }
  const Matrix& in_eigenbasis() const { return a_eig_; }

  /// Frequencies nu with a nonzero component, ascending.
  std::vector<double> active_frequencies(double tol = 0.0) const;

  /// Component A_nu in the lab basis.
  Matrix component(double nu) const;
  Matrix component_eig(double nu) const;

  /// Reconstruction sum_nu A_nu (lab basis).
  Matrix reconstruct() const;

  /// Heisenberg evolution e^{iHt} A e^{-iHt} = sum_nu e^{i nu t} A_nu (lab).
  Matrix heisenberg(double t) const;
  Matrix heisenberg_eig(double t) const;

  /// Operator Fourier transform Ahat(omega) = sum_nu A_nu fhat(omega - nu) (lab).
  Matrix operator_ft(const FilterParams& fp, double omega) const;
  Matrix operator_ft_eig(const FilterParams& fp, double omega) const;

  /// Hermiticity transport defect max|Ahat(omega)^dag - (Ahat^dag)(-omega)|.
  double hermiticity_transport_defect(const FilterParams& fp, double omega) const;

 private:
  const Spectrum* spec_;
  Matrix a_eig_;
};

/// Residual of the imaginary-time conjugation identity
///   e^{b H} Ahat(w) e^{-b H} = e^{b w} Ahat(w + 2 sigma^2 b) e^{sigma^2 b^2},
/// both sides evaluated independently; returns relative deviation.
double imaginary_time_conjugation_residual(const BohrDecomposition& a, const FilterParams& fp,
                                           double omega, double b);

/// Sum-over-energies reconstruction (1/sqrt(2 sigma sqrt(2 pi))) integral Ahat(w) dw,
/// with the integral done by adaptive quadrature per Bohr frequency; returns
/// max elementwise deviation from A.
double sum_over_energies_residual(const BohrDecomposition& a, const FilterParams& fp,
                                  double quad_tol = 1e-12);

/// Double Bohr table {(nu1, nu2) -> (A_{nu1})_{nu2}} for two Hamiltonians.
std::map<std::pair<double, double>, Matrix> double_bohr(const Matrix& a, const Spectrum& s1,
                                                        const Spectrum& s2);

/// Residual of  e^{zH2} e^{-zH1} A e^{zH1} e^{-zH2} = sum (A_{nu1})_{nu2} e^{z(nu2-nu1)}
/// at one complex z (direct matrix exponentials vs the table).
double double_bohr_residual(const Matrix& a, const Spectrum& s1, const Spectrum& s2, Complex z);

/// Convolution identity: Ahat_{sigma3}(w), sigma3^2 = sigma1^2 + sigma2^2,
/// against the quadrature of (sqrt(sigma3 sqrt(pi/2))/sqrt(sigma1 sigma2))
/// integral Ahat_{sigma1}(w') fhat_{sigma2}(w - w') dw'. Max elementwise deviation.
double convolve_ft_residual(const BohrDecomposition& a, double beta, double sigma1, double sigma2,
                            double omega);

/// Twirling identity: integral Ahat_{s1}(w,t) (x) Ahat_{s1}(w,t)^dag f_{s2}(t)^2 dt
/// equals integral fhat_{s2}(w-w')^2 Ahat_{s3}(w') (x) Ahat_{s3}(w')^dag dw' with
/// 1/s3^2 = 1/s1^2 + 1/s2^2. Both sides via Bohr closed forms (the time side) and
/// adaptive quadrature (the frequency side); max elementwise deviation.
double twirl_ft_residual(const BohrDecomposition& a, double beta, double sigma1, double sigma2,
                         double omega);

/// Operator Parseval bound: returns {lhs, rhs} of
///   || sum_a integral w(omega) Ahat^a(omega)^dag Ahat^a(omega) d omega ||
///     <= sup|w| * || sum_a A^a dag A^a ||.
/// The omega integral is done per Bohr pair by adaptive quadrature.
std::pair<double, double> parseval_bound_check(const std::vector<Matrix>& jumps,
                                               const Spectrum& spec, const FilterParams& fp,
                                               const std::function<double(double)>& weight,
                                               double weight_sup);

}  // namespace metastab
