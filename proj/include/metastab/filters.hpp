#pragma once

#include <stdexcept>

#include "metastab/types.hpp"

namespace metastab {

/// Inverse temperature and Gaussian energy width of the frequency filter.
/// The width is constrained to 0 < sigma <= 1/beta.
struct FilterParams {
  double beta;
  double sigma;

  FilterParams(double beta_, double sigma_) : beta(beta_), sigma(sigma_) {
    if (!(beta > 0.0)) throw std::invalid_argument("FilterParams: beta must be > 0");
    if (!(sigma > 0.0) || sigma > 1.0 / beta + 1e-12)
      throw std::invalid_argument("FilterParams: need 0 < sigma <= 1/beta");
  }
  static FilterParams default_width(double beta_) { return FilterParams(beta_, 1.0 / beta_); }

  double shift() const { return beta * sigma * sigma / 2.0; }  // Metropolis shift
};

/// Scaled complementary error function e^{x^2} erfc(x), stable for large x.
double erfcx(double x);

// ---------------------------------------------------------------------------
// Pointwise filter functions
// ---------------------------------------------------------------------------

/// Shifted-Metropolis transition weight gamma(w) = exp(-beta max(w + beta sigma^2/2, 0)).
double metropolis_weight(const FilterParams& fp, double w);

/// Gaussian time filter f(t) and its frequency transform fhat(w).
double gaussian_time_filter(double sigma, double t);
double gaussian_freq_filter(double sigma, double w);
inline double gaussian_time_filter(const FilterParams& fp, double t) {
  return gaussian_time_filter(fp.sigma, t);
}
inline double gaussian_freq_filter(const FilterParams& fp, double w) {
  return gaussian_freq_filter(fp.sigma, w);
}

/// Dirichlet-form frequency filter h(w) = e^{-sigma^2 beta^2/8} e^{-|w| beta/2}.
double dirichlet_h(const FilterParams& fp, double w);
/// Dirichlet-form time filter g(t) = 1/(beta cosh(2 pi t / beta)).
double dirichlet_g(const FilterParams& fp, double t);
/// Coherent-term kernel c(t) = 1/(beta sinh(2 pi t / beta)); odd, singular at 0.
double coherent_c(const FilterParams& fp, double t);

/// s-weighted frequency filter h_s(w) = exp(s beta (2w - s beta sigma^2)/2) h(w - s beta sigma^2).
double filter_hs(const FilterParams& fp, double s, double w);
/// s-weighted time filter g_s(t).
double filter_gs(const FilterParams& fp, double s, double t);
/// s-weighted time filter of the detailed-balance error functional.
double filter_gs_adb(const FilterParams& fp, double s, double t);

// ---------------------------------------------------------------------------
// Time-integral (Fourier) tables: integral of filter(t) e^{i nu t} dt.
// All time filters here are even, so the transforms are real; the coherent
// kernel is odd and transforms to i/2 tanh(beta nu / 4) in the principal-value
// sense.
// ---------------------------------------------------------------------------

double g_fourier(const FilterParams& fp, double nu);
double gs_fourier(const FilterParams& fp, double s, double nu);
double gs_adb_fourier(const FilterParams& fp, double s, double nu);
Complex coherent_fourier(const FilterParams& fp, double nu);

/// Principal-value quadrature of the coherent kernel transform: symmetric
/// truncation to [eps, T] with one Richardson step in eps. Cross-validates
/// coherent_fourier.
Complex coherent_fourier_pv(const FilterParams& fp, double nu, double eps = 1e-5,
                            double t_max = -1.0);

// ---------------------------------------------------------------------------
// Frequency-integral tables. Every omega integral in the Lindbladian and the
// metastability functionals reduces per Bohr pair (nu1, nu2) to
//
//   integral w(omega) fhat(omega - nu1) fhat(omega - nu2) d omega
//     = exp(-(nu1-nu2)^2 / (8 sigma^2)) * smeared_w((nu1+nu2)/2),
//
// where smeared_w is the weight averaged against a Gaussian of width sigma
// centered at the midpoint. Closed forms below use erfc algebra; the adaptive
// quadrature route in quadrature.hpp cross-checks them.
// ---------------------------------------------------------------------------

/// Gaussian average of the shifted-Metropolis weight:
///   (1/(sigma sqrt(2 pi))) integral gamma(w) exp(-(w-mid)^2/(2 sigma^2)) dw.
/// Satisfies the KMS condition smeared_metropolis(m) = e^{-beta m} * smeared_metropolis(-m).
double smeared_metropolis(const FilterParams& fp, double mid);

/// Gaussian average of the Dirichlet filter h.
double smeared_h(const FilterParams& fp, double mid);

/// Gaussian average of h_s; s = -1/2 reproduces smeared_metropolis exactly.
double smeared_hs(const FilterParams& fp, double s, double mid);

/// Pair coefficient exp(-(nu1-nu2)^2/(8 sigma^2)) * smeared(mid).
double pair_gaussian(const FilterParams& fp, double nu1, double nu2);
double pair_metropolis(const FilterParams& fp, double nu1, double nu2);
double pair_h(const FilterParams& fp, double nu1, double nu2);
double pair_hs(const FilterParams& fp, double s, double nu1, double nu2);

// Half-line Gaussian-exponential primitives used by the closed forms:
//   (1/(sigma sqrt(2 pi))) integral_{0}^{inf}  e^{a w} e^{-(w-m)^2/(2 sigma^2)} dw   (plus)
//   (1/(sigma sqrt(2 pi))) integral_{-inf}^{0} e^{a w} e^{-(w-m)^2/(2 sigma^2)} dw   (minus)
double gauss_exp_halfline_plus(double a, double m, double sigma);
double gauss_exp_halfline_minus(double a, double m, double sigma);

}  // namespace metastab
