#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "metastab/types.hpp"

namespace metastab {

/// SplitMix64: the per-component streams below are derived from a master seed
/// by hashing a component name and a stream index through this generator, so
/// parallel sweeps stay reproducible regardless of scheduling order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal();

  std::uint64_t uniform_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline double SplitMix64::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derive the seed of stream `index` of a named component from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                                 std::uint64_t index = 0) {
  SplitMix64 g(master ^ fnv1a(component) ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return g.next();
}

/// Complex Ginibre matrix (iid standard complex normal entries).
inline Matrix random_ginibre(int dim, SplitMix64& g) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g.normal(), g.normal());
  return m;
}

inline Matrix random_hermitian(int dim, SplitMix64& g) {
  Matrix m = random_ginibre(dim, g);
  return Matrix((m + m.adjoint()) / 2.0);
}

/// Random full-rank density matrix exp(-K)/Tr with K a scaled GUE draw.
inline Matrix random_full_rank_state(int dim, SplitMix64& g, double spread = 1.0) {
  Matrix k = random_hermitian(dim, g) * spread;
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  RealVector w = (-es.eigenvalues().array()).exp();
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

/// Random state without a rank guarantee (normalized Wishart).
inline Matrix random_state(int dim, SplitMix64& g) {
  Matrix m = random_ginibre(dim, g);
  Matrix s = m * m.adjoint();
  return Matrix(s / s.trace().real());
}

}  // namespace metastab
