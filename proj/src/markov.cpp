#include "metastab/markov.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "metastab/infotheory.hpp"

namespace metastab {

double QuantumChannel::completeness_defect() const {
  if (kraus.empty()) return 1.0;
  const int d = static_cast<int>(kraus[0].rows());
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& m : kraus) acc += m.adjoint() * m;
  return (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

QuantumChannel QuantumChannel::identity(int n) {
  QuantumChannel ch;
  ch.kind = Kind::Identity;
  ch.kraus.push_back(Matrix::Identity(1 << n, 1 << n));
  return ch;
}

QuantumChannel QuantumChannel::erasure(int n, const std::set<int>& region, const Matrix& tau_in) {
  QuantumChannel ch;
  ch.kind = Kind::Erasure;
  ch.region = region;
  const int k = static_cast<int>(region.size());
  const int dr = 1 << k;
  Matrix tau = tau_in;
  if (tau.size() == 0) tau = Matrix::Identity(dr, dr) / static_cast<double>(dr);
  Eigen::SelfAdjointEigenSolver<Matrix> es(tau);
  // Kraus set { sqrt(lambda_i) |v_i><j| (x) I } over region basis j and tau modes i
  for (int i = 0; i < dr; ++i) {
    double lam = std::max(0.0, es.eigenvalues()[i]);
    if (lam < 1e-15) continue;
    for (int j = 0; j < dr; ++j) {
      Matrix small = Matrix::Zero(dr, dr);  // sqrt(lam) |v_i><j|
      for (int r = 0; r < dr; ++r) small(r, j) = std::sqrt(lam) * es.eigenvectors()(r, i);
      ch.kraus.push_back(embed_on_support(small, region, n));
    }
  }
  return ch;
}

QuantumChannel QuantumChannel::depolarizing(int n, const std::set<int>& region, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p in [0,1]");
  QuantumChannel ch;
  ch.kind = Kind::Depolarizing;
  ch.region = region;
  const int d = 1 << n;
  ch.kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(d, d));
  QuantumChannel er = erasure(n, region);
  for (auto& m : er.kraus) ch.kraus.push_back(std::sqrt(p) * m);
  return ch;
}

QuantumChannel QuantumChannel::measurement_z(int n, const std::set<int>& region) {
  QuantumChannel ch;
  ch.kind = Kind::Measurement;
  ch.region = region;
  const int k = static_cast<int>(region.size());
  const int dr = 1 << k;
  for (int b = 0; b < dr; ++b) {
    Matrix proj = Matrix::Zero(dr, dr);
    proj(b, b) = 1.0;
    ch.kraus.push_back(embed_on_support(proj, region, n));
  }
  return ch;
}

Matrix apply_channel(const QuantumChannel& ch, const Matrix& state) {
  Matrix out = Matrix::Zero(state.rows(), state.cols());
  for (const auto& m : ch.kraus) out += m * state * m.adjoint();
  return out;
}

std::vector<std::pair<double, Matrix>> measurement_branches(const QuantumChannel& ch,
                                                            const Matrix& state) {
  std::vector<std::pair<double, Matrix>> out;
  for (const auto& m : ch.kraus) {
    Matrix branch = m * state * m.adjoint();
    double p = branch.trace().real();
    if (p > 1e-15) branch /= p;
    out.push_back({p, std::move(branch)});
  }
  return out;
}

// ===========================================================================
// Recovery map and experiments
// ===========================================================================

Matrix recovery_map(const LindbladOperator& region_lind, const Matrix& x_lab, double t) {
  if (t <= 0.0) throw std::invalid_argument("recovery_map: t must be > 0");
  double scale = x_lab.trace().real();
  if (std::abs(scale) < 1e-300) scale = 1.0;
  DensityMatrix avg = time_averaged_state(region_lind, x_lab / scale, t);
  return scale * avg.matrix;
}

RecoveryResult recovery_errors(const LindbladOperator& region_lind, const Matrix& sigma,
                               const QuantumChannel& noise, double t) {
  RecoveryResult res;
  res.t = t;
  Matrix noisy = apply_channel(noise, sigma);
  Matrix recovered = recovery_map(region_lind, noisy, t);
  Matrix r_sigma = recovery_map(region_lind, sigma, t);
  res.total_error = trace_norm(sigma - recovered);
  res.leakage = trace_norm(sigma - r_sigma);
  res.mixing = trace_norm(r_sigma - recovered);
  res.leakage_bound = t * region_lind.stationarity_error(sigma);
  res.triangle_defect = res.total_error - res.leakage - res.mixing;
  return res;
}

std::vector<RecoveryResult> gibbs_recovery_experiment(const LindbladOperator& region_lind,
                                                      double beta, const QuantumChannel& noise,
                                                      const std::vector<double>& t_grid) {
  DensityMatrix rho = gibbs_state(region_lind.spectrum(), beta);
  std::vector<RecoveryResult> rows;
  for (double t : t_grid) rows.push_back(recovery_errors(region_lind, rho.matrix, noise, t));
  return rows;
}

MetastableRecoveryReport metastable_recovery_experiment(const LindbladOperator& region_lind,
                                                        const Matrix& sigma_meta,
                                                        const QuantumChannel& noise,
                                                        const std::vector<double>& t_grid) {
  MetastableRecoveryReport rep;
  rep.epsilon_meta = region_lind.stationarity_error(sigma_meta);
  rep.best_error = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    auto row = recovery_errors(region_lind, sigma_meta, noise, t);
    if (row.total_error < rep.best_error) {
      rep.best_error = row.total_error;
      rep.best_t = t;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

double local_stationarity_max(const LindbladOperator& region_lind, const Matrix& sigma,
                              double t, int trials, std::uint64_t seed) {
  const Spectrum& s = region_lind.spectrum();
  Matrix sigma_eig = s.to_eigenbasis(sigma);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma_eig);
  Matrix sq = es.operatorSqrt();
  SplitMix64 g(derive_seed(seed, "local-stationarity"));
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Matrix o = random_hermitian(s.dim(), g);
    o /= operator_norm(o);
    Matrix ro = s.to_eigenbasis(time_averaged_observable(region_lind, s.to_lab(o), t));
    for (int a = 0; a < region_lind.num_terms(); ++a) {
      Matrix ld = region_lind.apply_term_adjoint_eig(a, ro);
      Complex v = (ro.adjoint() * sq * ld * sq).trace();
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

StrongMarkovReport strong_markov_report(const Matrix& sigma, const QuantumChannel& measurement,
                                        const std::function<Matrix(const Matrix&)>& recovery) {
  StrongMarkovReport rep;
  Matrix avg = Matrix::Zero(sigma.rows(), sigma.cols());
  for (const auto& m : measurement.kraus) {
    Matrix branch = m * sigma * m.adjoint();
    double p = branch.trace().real();
    Matrix rec = recovery(branch);
    rep.per_outcome.push_back(trace_norm(rec - p * sigma));
    rep.strong_error += rep.per_outcome.back();
    avg += branch;
  }
  rep.plain_error = trace_norm(recovery(avg) - sigma);
  return rep;
}

// ===========================================================================
// Channel difference as weighted commutators
// ===========================================================================

namespace {

// All Pauli strings supported inside the region (identity elsewhere),
// including the identity string.
std::vector<PauliString> region_pauli_strings(int n, const std::set<int>& region) {
  std::vector<int> qs(region.begin(), region.end());
  const int k = static_cast<int>(qs.size());
  std::vector<PauliString> out;
  const int total = 1 << (2 * k);
  out.reserve(total);
  for (int code = 0; code < total; ++code) {
    std::vector<PauliLetter> ls(n, PauliLetter::I);
    int c = code;
    for (int b = 0; b < k; ++b) {
      ls[qs[b]] = static_cast<PauliLetter>(c & 3);
      c >>= 2;
    }
    out.push_back(PauliString(n, std::move(ls)));
  }
  return out;
}

// Split a region Pauli string into its single-qubit non-identity factors.
std::vector<PauliString> local_factors(const PauliString& s) {
  std::vector<PauliString> out;
  for (int q : s.support()) out.push_back(PauliString::single(s.num_qubits(), q, s.letters()[q]));
  return out;
}

}  // namespace

std::vector<CommutatorTerm> channel_commutator_decomposition(const QuantumChannel& ch, int n) {
  const int d = 1 << n;
  auto strings = region_pauli_strings(n, ch.region);
  // Pauli coefficients of each Kraus operator: V = sum_S c_S S, c_S = Tr[S V]/d
  std::vector<CommutatorTerm> table;
  PauliString id = PauliString::identity(n);
  for (const auto& v : ch.kraus) {
    for (const auto& s : strings) {
      Complex c = (s.to_matrix().adjoint() * v).trace() / static_cast<double>(d);
      if (std::abs(c) < 1e-14) continue;
      auto factors = local_factors(s);
      if (factors.empty()) continue;  // identity component commutes
      // X - N^dag[X] = (1/2) sum_i ([X, V_i^dag] V_i + V_i^dag [V_i, X]):
      // expand V (and V^dag) into Pauli strings and telescope each string
      // commutator into single-qubit commutators with Pauli pre/post factors.
      for (std::size_t j = 0; j < factors.size(); ++j) {
        PauliString pre = id, post = id;
        for (std::size_t i = 0; i < j; ++i) pre = pre * factors[i];
        for (std::size_t i = j + 1; i < factors.size(); ++i) post = post * factors[i];
        // (1/2) V^dag [V, X]: expand V^dag over strings T, telescope [S, X]
        for (const auto& t_str : strings) {
          Complex ct = (t_str.to_matrix().adjoint() * v).trace() / static_cast<double>(d);
          if (std::abs(ct) < 1e-14) continue;
          CommutatorTerm term1{t_str * pre, factors[j], post, 0.5 * std::conj(ct) * c};
          table.push_back(term1);
        }
      }
    }
    // (1/2) [X, V^dag] V = -(1/2) [V^dag, X] V: telescope the V^dag strings
    for (const auto& s : strings) {
      Complex cdag = std::conj(Complex((s.to_matrix().adjoint() * v).trace()) /
                               static_cast<double>(d));
      if (std::abs(cdag) < 1e-14) continue;
      auto factors = local_factors(s);
      if (factors.empty()) continue;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        PauliString pre = id, post = id;
        for (std::size_t i = 0; i < j; ++i) pre = pre * factors[i];
        for (std::size_t i = j + 1; i < factors.size(); ++i) post = post * factors[i];
        for (const auto& t_str : strings) {
          Complex ct = (t_str.to_matrix().adjoint() * v).trace() / static_cast<double>(d);
          if (std::abs(ct) < 1e-14) continue;
          CommutatorTerm term{pre, factors[j], post * t_str, -0.5 * cdag * ct};
          table.push_back(term);
        }
      }
    }
  }
  return table;
}

double commutator_decomposition_residual(const QuantumChannel& ch, int n, int trials,
                                         std::uint64_t seed) {
  auto table = channel_commutator_decomposition(ch, n);
  SplitMix64 g(derive_seed(seed, "commutator-decomposition"));
  const int d = 1 << n;
  double worst = 0.0;
  // cache matrices per distinct Pauli string
  std::map<std::string, Matrix> cache;
  auto mat = [&](const PauliString& p) -> const Matrix& {
    auto key = p.to_string();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, p.to_matrix()).first;
    return it->second;
  };
  for (int trial = 0; trial < trials; ++trial) {
    Matrix x = random_hermitian(d, g);
    x /= operator_norm(x);
    Matrix lhs = x;
    for (const auto& m : ch.kraus) lhs -= m.adjoint() * x * m;
    Matrix rhs = Matrix::Zero(d, d);
    for (const auto& term : table) {
      const Matrix& a = mat(term.local);
      rhs += term.coefficient * (mat(term.left) * (a * x - x * a) * mat(term.right));
    }
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace metastab
