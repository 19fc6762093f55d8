#include "metastab/functionals.hpp"

#include <cmath>

#include "metastab/quadrature.hpp"

namespace metastab {

namespace {

struct EigState {
  RealVector ev;
  Matrix u;
  explicit EigState(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    ev = es.eigenvalues();
    u = es.eigenvectors();
  }
  Matrix power(double p) const {
    RealVector w = ev.array().max(0.0).pow(p);
    return u * w.cast<Complex>().asDiagonal() * u.adjoint();
  }
  Matrix log_matrix() const {
    RealVector w = ev.array().log();
    return u * w.cast<Complex>().asDiagonal() * u.adjoint();
  }
};

}  // namespace

Complex weighted_inner(const Matrix& x, const Matrix& y, const Matrix& w, double s) {
  if (s < -0.5 - 1e-12 || s > 0.5 + 1e-12)
    throw std::invalid_argument("weighted_inner: s must lie in [-1/2, 1/2]");
  EigState es(w);
  if (es.ev.minCoeff() <= 0.0)
    throw std::invalid_argument("weighted_inner: weight state must be full rank");
  return (x.adjoint() * es.power(0.5 + s) * y * es.power(0.5 - s)).trace();
}

double von_neumann_entropy(const Matrix& state) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(state, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()[i];
    if (p > 1e-14) acc -= p * std::log(p);
  }
  return acc;
}

double free_energy(const Matrix& sigma, const Matrix& hamiltonian, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("free_energy: beta must be > 0");
  return (hamiltonian * sigma).trace().real() - von_neumann_entropy(sigma) / beta;
}

double relative_entropy(const Matrix& sigma, const Matrix& rho) {
  EigState er(rho);
  if (er.ev.minCoeff() <= 0.0)
    throw std::invalid_argument("relative_entropy: rho must be full rank");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()[i];
    if (p > 1e-14) acc += p * std::log(p);
  }
  return acc - (sigma * er.log_matrix()).trace().real();
}

Matrix state_log(const Matrix& state, double rank_tol) {
  EigState es(state);
  if (es.ev.minCoeff() < rank_tol)
    throw std::invalid_argument(
        "state_log: state is numerically rank deficient; regularize(sigma, rho, delta) first");
  return es.log_matrix();
}

std::pair<DensityMatrix, double> regularize(const Matrix& sigma, const Matrix& rho, double delta) {
  if (delta < 0.0 || delta > 0.5)
    throw std::invalid_argument("regularize: delta must lie in [0, 1/2]");
  Matrix mixed = (1.0 - delta) * sigma + delta * rho;
  double log_rho_norm = operator_norm(state_log(rho));
  double budget = (delta > 0.0 ? std::log(1.0 / delta) : 0.0) + log_rho_norm;
  return {DensityMatrix(std::move(mixed)), budget};
}

// ===========================================================================
// Entropy production
// ===========================================================================

namespace {

Matrix log_gap_eig(const LindbladOperator& lind, const Matrix& sigma_eig) {
  const Spectrum& s = lind.spectrum();
  Matrix logsig = state_log(sigma_eig);
  RealVector rho = gibbs_diagonal(s, lind.filter_params().beta);
  for (int i = 0; i < s.dim(); ++i) logsig(i, i) -= std::log(rho[i]);
  return logsig;
}

}  // namespace

double entropy_production(const LindbladOperator& lind, int a, const Matrix& sigma_lab) {
  const Spectrum& s = lind.spectrum();
  Matrix sigma_eig = s.to_eigenbasis(sigma_lab);
  Matrix gap = log_gap_eig(lind, sigma_eig);
  return -(lind.eta() * lind.apply_term_eig(a, sigma_eig) * gap).trace().real();
}

EntropyProductionReport entropy_production_report(const LindbladOperator& lind,
                                                  const Matrix& sigma_lab) {
  const Spectrum& s = lind.spectrum();
  Matrix sigma_eig = s.to_eigenbasis(sigma_lab);
  Matrix gap = log_gap_eig(lind, sigma_eig);
  EntropyProductionReport rep;
  for (int a = 0; a < lind.num_terms(); ++a) {
    double ep = -(lind.eta() * lind.apply_term_eig(a, sigma_eig) * gap).trace().real();
    rep.per_jump.push_back(ep);
    rep.dissipative_total += ep;
  }
  // coherent flow i Tr[[H, sigma] (log sigma - log rho)]; zero by cyclicity,
  // reported to expose any numerical drift
  Matrix hs(sigma_eig);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) hs(i, j) *= (s.energy_of(i) - s.energy_of(j));
  rep.coherent = (kI * hs * gap).trace().real();
  return rep;
}

// ===========================================================================
// Fisher information / entropy-gradient functionals
// ===========================================================================

namespace {

// Shared s-quadrature skeleton for the gradient-square functionals:
// integrand(s) = sum over Bohr pairs of
//   Tr[[A_nu1, O]^dag sigma^{1/2+s} [A_nu2, O] sigma^{1/2-s}] * table_s(nu1, nu2)
// with table_s = time_fourier(s, nu2 - nu1) * pair_hs(s, nu1, nu2).
double gradient_square_functional(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                                  const SQuadrature& sq,
                                  double (*time_fourier)(const FilterParams&, double, double)) {
  const Spectrum& spec = lind.spectrum();
  const FilterParams fp = lind.filter_params();
  Matrix sigma_eig = spec.to_eigenbasis(sigma_lab);
  EigState es(sigma_eig);
  if (es.ev.minCoeff() <= 0.0)
    throw std::invalid_argument(
        "gradient functional: sigma is singular; regularize(sigma, rho, delta) first");
  Matrix o = log_gap_eig(lind, sigma_eig);
  const Matrix& jump = lind.term(a).jump;

  auto run = [&](int nodes_per_half) {
    double total = 0.0;
    for (const auto& node : split_legendre_half(nodes_per_half)) {
      const double s = node.x;
      PairWeightTable table(
          spec, [&fp, s, time_fourier](double d) { return time_fourier(fp, s, d); },
          [&fp, s](double m) { return smeared_hs(fp, s, m); });
      Matrix xp = es.power(0.5 + s);
      Matrix ym = es.power(0.5 - s);
      using kernels::weighted_jump_trace;
      Complex v = weighted_jump_trace(jump, Matrix(o * xp * o), ym, table) +
                  weighted_jump_trace(jump, xp, Matrix(o * ym * o), table) -
                  weighted_jump_trace(jump, Matrix(o * xp), Matrix(o * ym), table) -
                  weighted_jump_trace(jump, Matrix(xp * o), Matrix(ym * o), table);
      total += node.w * v.real();
    }
    return total;
  };

  double v = run(sq.nodes_per_half);
  if (sq.check_doubling) {
    double v2 = run(2 * sq.nodes_per_half);
    double scale = std::max({std::abs(v), std::abs(v2), 1e-30});
    if (std::abs(v - v2) / scale > sq.doubling_rel_tol)
      throw std::runtime_error("s-quadrature did not converge under node doubling");
    v = v2;
  }
  return v;
}

}  // namespace

double fisher_information(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                          const SQuadrature& sq) {
  return gradient_square_functional(
      lind, a, sigma_lab, sq,
      [](const FilterParams& fp, double s, double d) {
        return gs_fourier(fp, s, -d) * std::exp(-d * d / (8.0 * fp.sigma * fp.sigma));
      });
}

double adb_error_entropy_gradient(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                                  const SQuadrature& sq) {
  return gradient_square_functional(
      lind, a, sigma_lab, sq,
      [](const FilterParams& fp, double s, double d) {
        return gs_adb_fourier(fp, s, -d) * std::exp(-d * d / (8.0 * fp.sigma * fp.sigma));
      });
}

// ===========================================================================
// Approximate detailed balance, direct forms
// ===========================================================================

namespace {

// ADB reduces to four weighted traces with mid/diff-factorable weights:
//   Q(I, sigma; W) - Q(S, S; W e^{beta nu2/2}) - Q(S, S; W e^{beta nu1/2})
//     + Q(sigma, I; W e^{beta (nu1+nu2)/2}),
// where S = sqrt(sigma) and W carries the Metropolis pair weight and, in the
// time-filtered variant, the Dirichlet g transform of nu2 - nu1.
double adb_core(const LindbladOperator& lind, int a, const Matrix& sigma_lab, bool with_time) {
  const Spectrum& spec = lind.spectrum();
  const FilterParams fp = lind.filter_params();
  Matrix sigma_eig = spec.to_eigenbasis(sigma_lab);
  EigState es(sigma_eig);
  Matrix sqrt_sigma = es.power(0.5);
  const Matrix& jump = lind.term(a).jump;
  const double beta = fp.beta;

  auto diff_base = [fp, with_time](double d) {
    double v = std::exp(-d * d / (8.0 * fp.sigma * fp.sigma));
    if (with_time) v *= g_fourier(fp, -d);
    return v;
  };
  // nu1 = mid + d/2, nu2 = mid - d/2
  PairWeightTable w0(spec, diff_base, [fp](double m) { return smeared_metropolis(fp, m); });
  PairWeightTable w_cosh(
      spec, [diff_base, beta](double d) { return diff_base(d) * 2.0 * std::cosh(beta * d / 4.0); },
      [fp, beta](double m) { return smeared_metropolis(fp, m) * std::exp(beta * m / 2.0); });
  PairWeightTable w_full(
      spec, diff_base,
      [fp, beta](double m) { return smeared_metropolis(fp, m) * std::exp(beta * m); });

  Matrix id = Matrix::Identity(spec.dim(), spec.dim());
  using kernels::weighted_jump_trace;
  Complex v = weighted_jump_trace(jump, id, sigma_eig, w0) -
              weighted_jump_trace(jump, sqrt_sigma, sqrt_sigma, w_cosh) +
              weighted_jump_trace(jump, sigma_eig, id, w_full);
  return v.real();
}

}  // namespace

double adb_error(const LindbladOperator& lind, int a, const Matrix& sigma_lab) {
  return adb_core(lind, a, sigma_lab, true);
}

double adb_error_no_time(const LindbladOperator& lind, int a, const Matrix& sigma_lab) {
  return adb_core(lind, a, sigma_lab, false);
}

// ===========================================================================
// Reports
// ===========================================================================

AdbFiRecord adb_vs_fi_report(const LindbladOperator& lind, int a, const Matrix& sigma_lab,
                             const SQuadrature& sq) {
  AdbFiRecord rec;
  rec.adb = adb_error(lind, a, sigma_lab);
  rec.fisher = fisher_information(lind, a, sigma_lab, sq);
  rec.ep = entropy_production(lind, a, sigma_lab);
  rec.stationarity = trace_norm(lind.apply_term(a, sigma_lab));
  rec.sqrt_adb = std::sqrt(std::max(0.0, rec.adb));
  const Spectrum& s = lind.spectrum();
  Matrix sigma_eig = s.to_eigenbasis(sigma_lab);
  rec.log_gap_norm = operator_norm(log_gap_eig(lind, sigma_eig));
  double jump_norm = operator_norm(lind.term(a).jump);
  if (rec.fisher > 0.0) {
    double arg = rec.log_gap_norm * rec.log_gap_norm * jump_norm * jump_norm / rec.fisher;
    // the log factor can dip below 1 when FI is large; clamp the reported bound
    rec.fisher_log_bound = rec.fisher * (1.0 + std::max(0.0, std::log(arg)));
  }
  return rec;
}

MetastabilityReport metastability_report(const LindbladOperator& lind, const Matrix& sigma_lab,
                                         const Matrix& hamiltonian, const std::string& state_id,
                                         double delta, const SQuadrature& sq) {
  MetastabilityReport rep;
  rep.state_id = state_id;
  rep.regularization_delta = delta;
  const Spectrum& s = lind.spectrum();
  DensityMatrix rho = gibbs_state(s, lind.filter_params().beta);
  Matrix sigma = sigma_lab;
  if (delta > 0.0) sigma = regularize(sigma_lab, rho.matrix, delta).first.matrix;
  rep.epsilon_meta = lind.stationarity_error(sigma);
  rep.free_energy = free_energy(sigma, hamiltonian, lind.filter_params().beta);
  rep.relative_entropy = relative_entropy(sigma, rho.matrix);
  for (int a = 0; a < lind.num_terms(); ++a) {
    rep.ep_per_jump.push_back(entropy_production(lind, a, sigma));
    rep.fi_per_jump.push_back(fisher_information(lind, a, sigma, sq));
    rep.adb_per_jump.push_back(adb_error(lind, a, sigma));
  }
  return rep;
}

}  // namespace metastab
