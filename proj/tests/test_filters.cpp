#include <doctest.h>

#include <cmath>
#include <functional>

#include "metastab/filters.hpp"
#include "metastab/quadrature.hpp"

using namespace metastab;

namespace {
const FilterParams kFp(1.3, 1.0 / 1.3);
}

TEST_CASE("shifted Metropolis weight shape") {
  // gamma(w) = 1 on w <= -beta sigma^2/2 and decays exponentially after
  CHECK(metropolis_weight(kFp, -kFp.shift()) == doctest::Approx(1.0));
  CHECK(metropolis_weight(kFp, -kFp.shift() - 3.0) == doctest::Approx(1.0));
  CHECK(metropolis_weight(kFp, 1.0) ==
        doctest::Approx(std::exp(-kFp.beta * (1.0 + kFp.shift()))));
  for (double w : {-5.0, -1.0, 0.0, 0.7, 4.0}) CHECK(metropolis_weight(kFp, w) <= 1.0);
}

TEST_CASE("filter parameter validation") {
  CHECK_THROWS(FilterParams(1.0, 2.0));   // sigma > 1/beta
  CHECK_THROWS(FilterParams(1.0, 0.0));   // sigma = 0
  CHECK_THROWS(FilterParams(-1.0, 0.5));  // beta < 0
  CHECK_NOTHROW(FilterParams(2.0, 0.3));
}

TEST_CASE("erfcx against erfc in the overlap region") {
  for (double x : {-3.0, -0.5, 0.0, 0.5, 3.0, 10.0, 24.0}) {
    double ref = std::exp(x * x) * std::erfc(x);
    CHECK(erfcx(x) == doctest::Approx(ref).epsilon(1e-13));
  }
  // large-argument branch stays close to the asymptotic law 1/(x sqrt(pi))
  CHECK(erfcx(30.0) * 30.0 * std::sqrt(M_PI) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("time filters integrate to their stated constants") {
  // integral g = 1/2
  double ig = adaptive_integrate([&](double t) { return dirichlet_g(kFp, t); }, -40.0 * kFp.beta,
                                 40.0 * kFp.beta, 1e-14);
  CHECK(std::abs(ig - 0.5) < 1e-10);
  // integral g_s = 1/2 for each s
  for (double s : {-0.45, -0.2, 0.0, 0.3, 0.49}) {
    double v = adaptive_integrate([&](double t) { return filter_gs(kFp, s, t); }, -40.0 * kFp.beta,
                                  40.0 * kFp.beta, 1e-14);
    CHECK(std::abs(v - 0.5) < 1e-8);
  }
  // integral g_s^ADB = (1/2)(1/2 - |s|); integrable log spike at t = 0,
  // so integrate the halves separately
  for (double s : {-0.4, -0.1, 0.0, 0.25, 0.45}) {
    // even integrand; clamp the log spike at t = 0 below the quadrature scale
    auto f = [&](double t) { return filter_gs_adb(kFp, s, std::max(std::abs(t), 1e-290)); };
    double v = 2.0 * endpoint_integrate(f, 0.0, 40.0 * kFp.beta, 1e-13);
    CHECK(std::abs(v - 0.5 * (0.5 - std::abs(s))) < 1e-8);
  }
}

TEST_CASE("filters are positive on a sampled grid") {
  for (double s : {-0.49, -0.2, 0.1, 0.49})
    for (double t : {-3.0, -0.4, 0.0, 0.8, 5.0}) {
      CHECK(filter_gs(kFp, s, t) > 0.0);
      CHECK(filter_gs_adb(kFp, s, t) > 0.0);
    }
}

TEST_CASE("h_{-1/2} equals the Metropolis weight pointwise") {
  for (int i = 0; i <= 100; ++i) {
    double w = -6.0 + 12.0 * i / 100.0;
    CHECK(std::abs(filter_hs(kFp, -0.5, w) - metropolis_weight(kFp, w)) < 1e-12);
  }
}

TEST_CASE("sup of h_s over a 101x101 grid stays below 1") {
  double sup = 0.0;
  for (int a = 0; a <= 100; ++a)
    for (int b = 0; b <= 100; ++b) {
      double s = -0.5 + a / 100.0;
      double w = -8.0 + 16.0 * b / 100.0;
      sup = std::max(sup, filter_hs(kFp, s, w));
    }
  CHECK(sup <= 1.0 + 1e-12);
}

TEST_CASE("Fourier tables match direct quadrature") {
  for (double nu : {0.0, 0.7, -2.2, 4.5}) {
    auto g_re = adaptive_integrate(
        [&](double t) { return dirichlet_g(kFp, t) * std::cos(nu * t); }, -40.0 * kFp.beta,
        40.0 * kFp.beta, 1e-14);
    CHECK(std::abs(g_re - g_fourier(kFp, nu)) < 1e-10);
  }
  for (double s : {-0.35, 0.2})
    for (double nu : {0.4, -1.7}) {
      auto v = adaptive_integrate(
          [&](double t) { return filter_gs(kFp, s, t) * std::cos(nu * t); }, -40.0 * kFp.beta,
          40.0 * kFp.beta, 1e-14);
      CHECK(std::abs(v - gs_fourier(kFp, s, nu)) < 1e-9);
      auto va = adaptive_integrate(
          [&](double t) { return filter_gs_adb(kFp, s, t) * std::cos(nu * t); }, -40.0 * kFp.beta,
          40.0 * kFp.beta, 1e-14);
      CHECK(std::abs(va - gs_adb_fourier(kFp, s, nu)) < 1e-9);
    }
}

TEST_CASE("coherent kernel transform: closed form vs principal value") {
  for (double nu : {0.3, 1.0, -2.4, 5.0}) {
    Complex pv = coherent_fourier_pv(kFp, nu);
    Complex cf = coherent_fourier(kFp, nu);
    CHECK(std::abs(pv - cf) < 1e-8);
  }
  // odd kernel: transform is purely imaginary and odd in nu
  CHECK(coherent_fourier(kFp, 1.1).real() == 0.0);
  CHECK(std::abs(coherent_fourier(kFp, 1.1) + coherent_fourier(kFp, -1.1)) < 1e-15);
}

namespace {
// reference quadrature split at the weight's kink so it converges to 1e-12
double piecewise_ref(double lo, double hi, double kink, const std::function<double(double)>& f) {
  if (kink <= lo || kink >= hi) return adaptive_integrate(f, lo, hi, 1e-14);
  return adaptive_integrate(f, lo, kink, 1e-14) + adaptive_integrate(f, kink, hi, 1e-14);
}
}  // namespace

TEST_CASE("smeared weights agree with adaptive quadrature") {
  // the closed forms are trusted only because of this cross-check
  for (double beta : {0.5, 1.3, 2.0}) {
    FilterParams fp(beta, 1.0 / beta);
    for (double mid : {-6.0, -1.0, -0.1, 0.0, 0.4, 2.0, 7.0}) {
      auto gauss = [&](double w) {
        return std::exp(-(w - mid) * (w - mid) / (2.0 * fp.sigma * fp.sigma)) /
               (fp.sigma * std::sqrt(2.0 * M_PI));
      };
      double lo = mid - 14.0 * fp.sigma - 6.0 / beta, hi = mid + 14.0 * fp.sigma + 6.0 / beta;
      double g_ref = piecewise_ref(
          lo, hi, -fp.shift(), [&](double w) { return metropolis_weight(fp, w) * gauss(w); });
      CHECK(std::abs(smeared_metropolis(fp, mid) - g_ref) <= 1e-9 * std::max(g_ref, 1e-12));
      double h_ref =
          piecewise_ref(lo, hi, 0.0, [&](double w) { return dirichlet_h(fp, w) * gauss(w); });
      CHECK(std::abs(smeared_h(fp, mid) - h_ref) <= 1e-9 * std::max(h_ref, 1e-12));
      for (double s : {-0.5, -0.17, 0.33, 0.5}) {
        double hs_ref = piecewise_ref(lo, hi, s * beta * fp.sigma * fp.sigma,
                                      [&](double w) { return filter_hs(fp, s, w) * gauss(w); });
        CHECK(std::abs(smeared_hs(fp, s, mid) - hs_ref) <= 1e-9 * std::max(hs_ref, 1e-12));
      }
    }
  }
}

TEST_CASE("smeared Metropolis satisfies the KMS ratio exactly") {
  for (double m : {0.3, 1.1, 2.7}) {
    double lhs = smeared_metropolis(kFp, m);
    double rhs = std::exp(-kFp.beta * m) * smeared_metropolis(kFp, -m);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("smeared h_s at s = -1/2 reproduces the smeared Metropolis weight") {
  for (double m : {-3.0, -0.4, 0.0, 1.2, 4.0})
    CHECK(std::abs(smeared_hs(kFp, -0.5, m) - smeared_metropolis(kFp, m)) < 1e-13);
}

TEST_CASE("frequency filter normalization at omega = 0") {
  CHECK(gaussian_freq_filter(kFp, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(kFp.sigma * std::sqrt(2.0 * M_PI))));
}
