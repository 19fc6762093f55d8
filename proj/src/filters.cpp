#include "metastab/filters.hpp"

#include <cmath>

#include "metastab/quadrature.hpp"

namespace metastab {

double erfcx(double x) {
  if (x < 0.0) {
    // erfcx(x) = 2 e^{x^2} - erfcx(-x); overflows near x < -26, which the
    // half-line primitives never request.
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  // Asymptotic continued fraction, |error| < 1e-16 for x >= 25.
  double x2 = x * x;
  double s = 1.0 + (-0.5 + (0.75 + (-1.875 + 6.5625 / x2) / x2) / x2) / x2;
  return s / (x * std::sqrt(M_PI));
}

// ===========================================================================
// Pointwise filters
// ===========================================================================

double metropolis_weight(const FilterParams& fp, double w) {
  return std::exp(-fp.beta * std::max(w + fp.shift(), 0.0));
}

double gaussian_time_filter(double sigma, double t) {
  return std::exp(-sigma * sigma * t * t) * std::sqrt(sigma * std::sqrt(2.0 / M_PI));
}

double gaussian_freq_filter(double sigma, double w) {
  return std::exp(-w * w / (4.0 * sigma * sigma)) / std::sqrt(sigma * std::sqrt(2.0 * M_PI));
}

double dirichlet_h(const FilterParams& fp, double w) {
  double b = fp.beta, s = fp.sigma;
  return std::exp(-s * s * b * b / 8.0) * std::exp(-std::abs(w) * b / 2.0);
}

double dirichlet_g(const FilterParams& fp, double t) {
  return 1.0 / (fp.beta * std::cosh(2.0 * M_PI * t / fp.beta));
}

double coherent_c(const FilterParams& fp, double t) {
  return 1.0 / (fp.beta * std::sinh(2.0 * M_PI * t / fp.beta));
}

double filter_hs(const FilterParams& fp, double s, double w) {
  double b = fp.beta, sg = fp.sigma;
  return std::exp(s * b * (2.0 * w - s * b * sg * sg) / 2.0) *
         dirichlet_h(fp, w - s * b * sg * sg);
}

double filter_gs(const FilterParams& fp, double s, double t) {
  double x = 2.0 * M_PI * t / fp.beta;
  return (2.0 / fp.beta) * std::cos(s * M_PI) * std::cosh(x) /
         (std::cosh(2.0 * x) + std::cos(2.0 * s * M_PI));
}

double filter_gs_adb(const FilterParams& fp, double s, double t) {
  // log((cosh(2pi t/b) + cos(s pi)) / (cosh(2pi t/b) - cos(s pi))) via the
  // half-angle split cosh(2x) -/+ cos(2y) = 2(sinh^2 x + sin^2 y) etc., stable
  // near the integrable spike at (t, s) = (0, 0)
  double x = M_PI * t / fp.beta;
  double sh = std::sinh(std::abs(x)), chh = std::cosh(x);
  double sn = std::abs(std::sin(s * M_PI / 2.0)), cn = std::cos(s * M_PI / 2.0);
  auto log_sq_sum = [](double a, double b) {
    double m = std::max(a, b);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    double r = std::min(a, b) / m;
    return 2.0 * std::log(m) + std::log1p(r * r);
  };
  double log_num = log_sq_sum(chh * cn, sh * sn) + std::log(2.0);
  double log_den = log_sq_sum(sh * cn, chh * sn) + std::log(2.0);
  return (log_num - log_den) / (2.0 * M_PI * fp.beta);
}

// ===========================================================================
// Fourier tables
// ===========================================================================

double g_fourier(const FilterParams& fp, double nu) {
  return 0.5 / std::cosh(fp.beta * nu / 4.0);
}

double gs_fourier(const FilterParams& fp, double s, double nu) {
  double x = fp.beta * nu;
  // cosh(s x/2)/(2 cosh(x/4)) with |s|<=1/2: exponents never exceed |x|/4.
  double num = std::cosh(s * x / 2.0);
  double den = std::cosh(x / 4.0);
  if (std::abs(x) > 1400.0) {
    return 0.5 * std::exp(std::abs(s * x / 2.0) - std::abs(x) / 4.0);
  }
  return 0.5 * num / den;
}

double gs_adb_fourier(const FilterParams& fp, double s, double nu) {
  double r = 0.5 - std::abs(s);
  double x = fp.beta * nu;
  if (std::abs(x) < 1e-7) {
    double rx = r * x / 2.0;
    return 0.5 * r * (1.0 + rx * rx / 6.0) / std::cosh(x / 4.0);
  }
  return std::sinh(r * x / 2.0) / (x * std::cosh(x / 4.0));
}

Complex coherent_fourier(const FilterParams& fp, double nu) {
  return Complex(0.0, 0.5 * std::tanh(fp.beta * nu / 4.0));
}

Complex coherent_fourier_pv(const FilterParams& fp, double nu, double eps, double t_max) {
  if (t_max <= 0.0) t_max = 20.0 * fp.beta;
  auto trunc = [&](double e) {
    // Symmetric truncation folds to 2i * integral_e^T c(t) sin(nu t) dt.
    auto f = [&](double t) { return coherent_c(fp, t) * std::sin(nu * t); };
    return 2.0 * adaptive_integrate(f, e, t_max, 1e-13);
  };
  double i1 = trunc(eps);
  double i2 = trunc(eps / 2.0);
  return Complex(0.0, 2.0 * i2 - i1);  // Richardson in the truncation parameter
}

// ===========================================================================
// Half-line Gaussian primitives and smeared weights
// ===========================================================================

double gauss_exp_halfline_minus(double a, double m, double sigma) {
  // exact: (1/2) e^{a m + a^2 sigma^2/2} erfc((m + a sigma^2)/(sigma sqrt 2)),
  // rewritten through erfcx so the exponentials cancel analytically:
  // e^{a m + a^2 s^2/2 - x^2} = e^{-m^2/(2 sigma^2)} for x = (m+a sigma^2)/(sigma sqrt 2).
  double x = (m + a * sigma * sigma) / (sigma * std::sqrt(2.0));
  double core = 0.5 * std::exp(-m * m / (2.0 * sigma * sigma));
  if (x >= 0.0) return core * erfcx(x);
  return std::exp(a * m + a * a * sigma * sigma / 2.0) - core * erfcx(-x);
}

double gauss_exp_halfline_plus(double a, double m, double sigma) {
  return gauss_exp_halfline_minus(-a, -m, sigma);
}

double smeared_metropolis(const FilterParams& fp, double mid) {
  double b = fp.beta, sg = fp.sigma, c0 = fp.shift();
  double x1 = (mid + c0) / (sg * std::sqrt(2.0));
  double t1 = 0.5 * std::erfc(x1);
  double t2 = 0.5 * erfcx((c0 - mid) / (sg * std::sqrt(2.0))) *
              std::exp(-(mid + c0) * (mid + c0) / (2.0 * sg * sg));
  (void)b;
  return t1 + t2;
}

double smeared_h(const FilterParams& fp, double mid) {
  double b = fp.beta, sg = fp.sigma;
  double pref = std::exp(-sg * sg * b * b / 8.0);
  return pref * (gauss_exp_halfline_minus(b / 2.0, mid, sg) +
                 gauss_exp_halfline_plus(-b / 2.0, mid, sg));
}

double smeared_hs(const FilterParams& fp, double s, double mid) {
  double b = fp.beta, sg = fp.sigma;
  double mt = mid - s * b * sg * sg;
  double j = std::exp(-sg * sg * b * b / 8.0) *
             (gauss_exp_halfline_minus((s + 0.5) * b, mt, sg) +
              gauss_exp_halfline_plus((s - 0.5) * b, mt, sg));
  return std::exp(s * s * b * b * sg * sg / 2.0) * j;
}

double pair_gaussian(const FilterParams& fp, double nu1, double nu2) {
  double d = nu1 - nu2;
  return std::exp(-d * d / (8.0 * fp.sigma * fp.sigma));
}

double pair_metropolis(const FilterParams& fp, double nu1, double nu2) {
  return pair_gaussian(fp, nu1, nu2) * smeared_metropolis(fp, (nu1 + nu2) / 2.0);
}

double pair_h(const FilterParams& fp, double nu1, double nu2) {
  return pair_gaussian(fp, nu1, nu2) * smeared_h(fp, (nu1 + nu2) / 2.0);
}

double pair_hs(const FilterParams& fp, double s, double nu1, double nu2) {
  return pair_gaussian(fp, nu1, nu2) * smeared_hs(fp, s, (nu1 + nu2) / 2.0);
}

}  // namespace metastab
