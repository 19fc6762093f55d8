#pragma once

#include <functional>

#include "metastab/spectrum.hpp"
#include "metastab/types.hpp"

namespace metastab {

/// Weights over Bohr-frequency pairs, indexed by eigenbasis matrix elements.
/// Every frequency integral of the theory factors per pair (nu1, nu2) into
/// diff_fn(nu1 - nu2) * mid_fn((nu1 + nu2)/2); both factors are tabulated on
/// the distinct-energy grid when that fits in memory and evaluated on the fly
/// otherwise.
class PairWeightTable {
 public:
  using ScalarFn = std::function<double(double)>;

  PairWeightTable(const Spectrum& spec, ScalarFn diff_fn, ScalarFn mid_fn);

  /// Weight attached to element pair ((i,j), (k,l)):
  /// w(E_i - E_j, E_k - E_l) for eigenbasis row/col indices.
  double operator()(int i, int j, int k, int l) const {
    if (tabulated_) {
      int p1 = gid_[i] * m_ + gid_[j];
      int p2 = gid_[k] * m_ + gid_[l];
      return diff_tab_[p1 * np_ + p2] * mid_tab_[p1 * np_ + p2];
    }
    double n1 = energy_[gid_[i]] - energy_[gid_[j]];
    double n2 = energy_[gid_[k]] - energy_[gid_[l]];
    return diff_fn_(n1 - n2) * mid_fn_((n1 + n2) / 2.0);
  }

  int dim() const { return static_cast<int>(gid_.size()); }

 private:
  int m_ = 0;   // distinct energy groups
  int np_ = 0;  // m_^2 element-pair classes
  bool tabulated_ = false;
  std::vector<int> gid_;
  std::vector<double> energy_;
  std::vector<double> diff_tab_, mid_tab_;
  ScalarFn diff_fn_, mid_fn_;
};

namespace kernels {

/// Weighted double-jump trace  sum_{i j k l} conj(A(j,i)) M(j,k) A(k,l) N(l,i) W((j,i),(k,l)),
/// i.e. Tr[A_{nu1}^dag M A_{nu2} N] summed over Bohr pairs with weight W.
/// OpenMP-parallel over the (j,i) element of the daggered jump.
Complex weighted_jump_trace(const Matrix& a, const Matrix& m, const Matrix& n,
                            const PairWeightTable& w);

/// Weighted transition action  out(p,q) = sum_{k l} A(p,k) X(k,l) conj(A(q,l)) W((p,k),(q,l)),
/// i.e. sum over Bohr pairs of A_{nu1} X A_{nu2}^dag with weight W.
Matrix weighted_transition_apply(const Matrix& a, const Matrix& x, const PairWeightTable& w);

}  // namespace kernels

namespace ref {

/// Serial reference implementations (plain quadruple loops) kept for testing
/// the parallel kernels and for the benchmark comparison.
Complex weighted_jump_trace(const Matrix& a, const Matrix& m, const Matrix& n,
                            const PairWeightTable& w);
Matrix weighted_transition_apply(const Matrix& a, const Matrix& x, const PairWeightTable& w);

}  // namespace ref

}  // namespace metastab
