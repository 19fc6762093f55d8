#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace metastab {

/// Adaptive Gauss-Kronrod on [a, b].
template <typename F>
double adaptive_integrate(F f, double a, double b, double tol = 1e-12) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 14, tol);
}

/// tanh-sinh rule for integrands with endpoint singularities (integrable logs).
template <typename F>
double endpoint_integrate(F f, double a, double b, double tol = 1e-12) {
  boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate(f, a, b, tol);
}

struct QuadNode {
  double x;
  double w;
};

namespace detail {
template <unsigned N>
void fill_legendre(std::vector<QuadNode>& out, double a, double b) {
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto& xs = rule::abscissa();
  const auto& ws = rule::weights();
  double mid = (a + b) / 2.0, half = (b - a) / 2.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back({mid + half * xs[i], half * ws[i]});
    if (xs[i] != 0.0) out.push_back({mid - half * xs[i], half * ws[i]});
  }
}
}  // namespace detail

/// Gauss-Legendre rule mapped to [a, b]; n in {16, 32, 64, 128}.
inline std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
  std::vector<QuadNode> out;
  out.reserve(n);
  switch (n) {
    case 16: detail::fill_legendre<16>(out, a, b); break;
    case 32: detail::fill_legendre<32>(out, a, b); break;
    case 64: detail::fill_legendre<64>(out, a, b); break;
    case 128: detail::fill_legendre<128>(out, a, b); break;
    default: throw std::invalid_argument("gauss_legendre: supported sizes are 16/32/64/128");
  }
  return out;
}

/// Rule for integrals over s in (-1/2, 1/2) split at 0, where the
/// detailed-balance time filter has a |s| kink: n nodes per half.
inline std::vector<QuadNode> split_legendre_half(int n_per_half) {
  auto left = gauss_legendre(n_per_half, -0.5, 0.0);
  auto right = gauss_legendre(n_per_half, 0.0, 0.5);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace metastab
