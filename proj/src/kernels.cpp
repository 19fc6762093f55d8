#include "metastab/kernels.hpp"

namespace metastab {

namespace {
constexpr std::size_t kTableEntryLimit = std::size_t(1) << 24;  // ~134M doubles x2
}

PairWeightTable::PairWeightTable(const Spectrum& spec, ScalarFn diff_fn, ScalarFn mid_fn)
    : m_(spec.num_groups()),
      np_(m_ * m_),
      gid_(spec.group_of()),
      energy_(spec.energies()),
      diff_fn_(std::move(diff_fn)),
      mid_fn_(std::move(mid_fn)) {
  std::size_t entries = static_cast<std::size_t>(np_) * static_cast<std::size_t>(np_);
  if (entries > kTableEntryLimit) return;  // large register: evaluate lazily
  tabulated_ = true;
  std::vector<double> freq(np_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) freq[a * m_ + b] = energy_[a] - energy_[b];
  diff_tab_.resize(entries);
  mid_tab_.resize(entries);
#pragma omp parallel for schedule(static)
  for (int p1 = 0; p1 < np_; ++p1) {
    for (int p2 = 0; p2 < np_; ++p2) {
      diff_tab_[static_cast<std::size_t>(p1) * np_ + p2] = diff_fn_(freq[p1] - freq[p2]);
      mid_tab_[static_cast<std::size_t>(p1) * np_ + p2] = mid_fn_((freq[p1] + freq[p2]) / 2.0);
    }
  }
}

namespace kernels {

Complex weighted_jump_trace(const Matrix& a, const Matrix& m, const Matrix& n,
                            const PairWeightTable& w) {
  const int d = static_cast<int>(a.rows());
  double re = 0.0, im = 0.0;
#pragma omp parallel for collapse(2) reduction(+ : re, im) schedule(static)
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const Complex a1 = std::conj(a(j, i));
      if (a1 == Complex(0, 0)) continue;
      Complex acc(0, 0);
      for (int k = 0; k < d; ++k) {
        const Complex mjk = m(j, k);
        if (mjk == Complex(0, 0)) continue;
        for (int l = 0; l < d; ++l) {
          acc += mjk * a(k, l) * n(l, i) * w(j, i, k, l);
        }
      }
      acc *= a1;
      re += acc.real();
      im += acc.imag();
    }
  }
  return {re, im};
}

Matrix weighted_transition_apply(const Matrix& a, const Matrix& x, const PairWeightTable& w) {
  const int d = static_cast<int>(a.rows());
  Matrix out(d, d);
#pragma omp parallel for collapse(2) schedule(static)
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      Complex acc(0, 0);
      for (int k = 0; k < d; ++k) {
        const Complex apk = a(p, k);
        if (apk == Complex(0, 0)) continue;
        for (int l = 0; l < d; ++l) {
          acc += apk * x(k, l) * std::conj(a(q, l)) * w(p, k, q, l);
        }
      }
      out(p, q) = acc;
    }
  }
  return out;
}

}  // namespace kernels

namespace ref {

Complex weighted_jump_trace(const Matrix& a, const Matrix& m, const Matrix& n,
                            const PairWeightTable& w) {
  const int d = static_cast<int>(a.rows());
  Complex acc(0, 0);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          acc += std::conj(a(j, i)) * m(j, k) * a(k, l) * n(l, i) * w(j, i, k, l);
  return acc;
}

Matrix weighted_transition_apply(const Matrix& a, const Matrix& x, const PairWeightTable& w) {
  const int d = static_cast<int>(a.rows());
  Matrix out = Matrix::Zero(d, d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out(p, q) += a(p, k) * x(k, l) * std::conj(a(q, l)) * w(p, k, q, l);
  return out;
}

}  // namespace ref

}  // namespace metastab
