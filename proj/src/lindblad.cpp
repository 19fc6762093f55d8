#include "metastab/lindblad.hpp"

#include <cmath>
#include <fstream>
#include <unsupported/Eigen/MatrixFunctions>

#include <json.hpp>

#include "metastab/quadrature.hpp"

namespace metastab {

using json = nlohmann::ordered_json;

Vector vectorize(const Matrix& x) {
  const int d = static_cast<int>(x.rows());
  Vector v(d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) v[k * d + l] = x(k, l);
  return v;
}

Matrix unvectorize(const Vector& v, int d) {
  Matrix x(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) x(k, l) = v[k * d + l];
  return x;
}

// ===========================================================================
// Construction
// ===========================================================================

namespace {

// decay(p,q) = sum_j conj(A(j,p)) A(j,q) W((j,q),(j,p))
Matrix build_decay(const Matrix& a, const PairWeightTable& w) {
  const int d = static_cast<int>(a.rows());
  Matrix out(d, d);
#pragma omp parallel for collapse(2) schedule(static)
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      Complex acc(0, 0);
      for (int j = 0; j < d; ++j) acc += std::conj(a(j, p)) * a(j, q) * w(j, q, j, p);
      out(p, q) = acc;
    }
  return out;
}

// coherent(p,q) = (i/2) tanh(beta (E_p - E_q)/4) * sum_j conj(A(j,p)) A(j,q) W((j,q),(j,p))
Matrix build_coherent(const Matrix& a, const PairWeightTable& w, const Spectrum& s, double beta) {
  const int d = static_cast<int>(a.rows());
  Matrix out(d, d);
#pragma omp parallel for collapse(2) schedule(static)
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      Complex acc(0, 0);
      for (int j = 0; j < d; ++j) acc += std::conj(a(j, p)) * a(j, q) * w(j, q, j, p);
      out(p, q) = acc * Complex(0.0, 0.5 * std::tanh(beta * (s.energy_of(p) - s.energy_of(q)) / 4.0));
    }
  return out;
}

PairWeightTable metropolis_pair_table(const Spectrum& spec, const FilterParams& fp) {
  double sg = fp.sigma;
  return PairWeightTable(
      spec, [sg](double d) { return std::exp(-d * d / (8.0 * sg * sg)); },
      [fp](double m) { return smeared_metropolis(fp, m); });
}

}  // namespace

LindbladOperator::LindbladOperator(std::shared_ptr<const Spectrum> spec, FilterParams fp,
                                   std::vector<Matrix> jumps_lab, std::vector<std::string> labels,
                                   bool include_hamiltonian, double eta)
    : spec_(std::move(spec)),
      fp_(fp),
      include_hamiltonian_(include_hamiltonian),
      eta_(eta),
      gamma_table_(metropolis_pair_table(*spec_, fp_)) {
  if (jumps_lab.size() != labels.size())
    throw std::invalid_argument("LindbladOperator: one label per jump");
  terms_.reserve(jumps_lab.size());
  for (std::size_t a = 0; a < jumps_lab.size(); ++a) {
    const Matrix& j = jumps_lab[a];
    if (hermiticity_defect(j) > 1e-10)
      throw std::invalid_argument("jump operator must be Hermitian");
    if (operator_norm(j) > 1.0 + 1e-9)
      throw std::invalid_argument("jump operator norm must be <= 1");
    LindbladTerm t;
    t.label = labels[a];
    t.jump = spec_->to_eigenbasis(j);
    t.decay = build_decay(t.jump, gamma_table_);
    t.coherent = build_coherent(t.jump, gamma_table_, *spec_, fp_.beta);
    terms_.push_back(std::move(t));
  }
}

Matrix LindbladOperator::apply_term_eig(int a, const Matrix& x) const {
  const LindbladTerm& t = terms_[a];
  Matrix out = kernels::weighted_transition_apply(t.jump, x, gamma_table_);
  out -= 0.5 * (t.decay * x + x * t.decay);
  out -= kI * (t.coherent * x - x * t.coherent);
  return out;
}

Matrix LindbladOperator::apply_term_adjoint_eig(int a, const Matrix& y) const {
  const LindbladTerm& t = terms_[a];
  // adjoint of the transition part swaps A_{nu1} (.) A_{nu2}^dag to
  // A_{nu2}^dag (.) A_{nu1}: same kernel with the daggered jump, mirrored table.
  const int d = dim();
  Matrix out(d, d);
#pragma omp parallel for collapse(2) schedule(static)
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Complex acc(0, 0);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          acc += std::conj(t.jump(p, k)) * y(p, q) * t.jump(q, l) * gamma_table_(p, k, q, l);
      out(k, l) = acc;
    }
  out -= 0.5 * (t.decay * y + y * t.decay);
  out += kI * (t.coherent * y - y * t.coherent);
  return out;
}

Matrix LindbladOperator::apply_eig(const Matrix& x) const {
  const int d = dim();
  Matrix out = Matrix::Zero(d, d);
  for (int a = 0; a < num_terms(); ++a) out += apply_term_eig(a, x);
  out *= eta_;
  if (include_hamiltonian_) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out(i, j) += -kI * (spec_->energy_of(i) - spec_->energy_of(j)) * x(i, j);
  }
  return out;
}

Matrix LindbladOperator::apply_adjoint_eig(const Matrix& y) const {
  const int d = dim();
  Matrix out = Matrix::Zero(d, d);
  for (int a = 0; a < num_terms(); ++a) out += apply_term_adjoint_eig(a, y);
  out *= eta_;
  if (include_hamiltonian_) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out(i, j) += kI * (spec_->energy_of(i) - spec_->energy_of(j)) * y(i, j);
  }
  return out;
}

Matrix LindbladOperator::apply(const Matrix& x) const {
  return spec_->to_lab(apply_eig(spec_->to_eigenbasis(x)));
}
Matrix LindbladOperator::apply_adjoint(const Matrix& y) const {
  return spec_->to_lab(apply_adjoint_eig(spec_->to_eigenbasis(y)));
}
Matrix LindbladOperator::apply_term(int a, const Matrix& x) const {
  return spec_->to_lab(eta_ * apply_term_eig(a, spec_->to_eigenbasis(x)));
}

double LindbladOperator::stationarity_error(const Matrix& x_lab) const {
  return trace_norm(apply_eig(spec_->to_eigenbasis(x_lab)));
}

Matrix LindbladOperator::superoperator_term(int a, int max_dim) const {
  const int d = dim();
  if (d > max_dim) throw std::length_error("superoperator: dimension cap exceeded");
  const LindbladTerm& t = terms_[a];
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Complex v = t.jump(p, k) * std::conj(t.jump(q, l)) * gamma_table_(p, k, q, l);
          if (l == q) v += -0.5 * t.decay(p, k) - kI * t.coherent(p, k);
          if (p == k) v += -0.5 * t.decay(l, q) + kI * t.coherent(l, q);
          s(p * d + q, k * d + l) += v;
        }
  return s;
}

Matrix LindbladOperator::superoperator(int max_dim) const {
  const int d = dim();
  if (d > max_dim) throw std::length_error("superoperator: dimension cap exceeded");
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < num_terms(); ++a) s += superoperator_term(a, max_dim);
  s *= eta_;
  if (include_hamiltonian_) {
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        s(p * d + q, p * d + q) += -kI * (spec_->energy_of(p) - spec_->energy_of(q));
  }
  return s;
}

Matrix LindbladOperator::superoperator_adjoint(int max_dim) const {
  return superoperator(max_dim).adjoint();
}

double LindbladOperator::choi_min_eigenvalue(double eps) const {
  const int d = dim();
  Matrix m = (eps * superoperator()).exp();
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Matrix basis = Matrix::Zero(d, d);
      basis(k, l) = 1.0;
      Matrix image = unvectorize(m * vectorize(basis), d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) choi(i * d + k, j * d + l) += image(i, j);
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

LindbladOperator build_local_lindbladian(std::shared_ptr<const Spectrum> spec,
                                         const FilterParams& fp, const Matrix& jump_lab,
                                         const std::string& label) {
  return LindbladOperator(std::move(spec), fp, {jump_lab}, {label}, false, 1.0);
}

LindbladOperator build_full_lindbladian(std::shared_ptr<const Spectrum> spec,
                                        const FilterParams& fp,
                                        const std::vector<PauliString>& jumps, double eta) {
  std::vector<Matrix> mats;
  std::vector<std::string> labels;
  for (const auto& p : jumps) {
    mats.push_back(p.to_matrix());
    labels.push_back(p.to_string());
  }
  return LindbladOperator(std::move(spec), fp, std::move(mats), std::move(labels), true, eta);
}

LindbladOperator build_region_lindbladian(std::shared_ptr<const Spectrum> spec,
                                          const FilterParams& fp, const std::set<int>& region) {
  int n = 0;
  while ((1 << n) < spec->dim()) ++n;
  auto jumps = single_qubit_jump_set(n, region);
  std::vector<Matrix> mats;
  std::vector<std::string> labels;
  for (const auto& p : jumps) {
    mats.push_back(p.to_matrix());
    labels.push_back(p.to_string());
  }
  return LindbladOperator(std::move(spec), fp, std::move(mats), std::move(labels), false, 1.0);
}

// ===========================================================================
// Dynamics
// ===========================================================================

namespace {

// Adaptive Dormand-Prince 5(4) on the matrix-valued state (eigenbasis).
Matrix dopri_evolve(const LindbladOperator& lind, Matrix x, double t_final, double abs_tol,
                    double rel_tol) {
  static const double c[7] = {0, 1. / 5, 3. / 10, 4. / 5, 8. / 9, 1., 1.};
  static const double a[7][6] = {
      {},
      {1. / 5},
      {3. / 40, 9. / 40},
      {44. / 45, -56. / 15, 32. / 9},
      {19372. / 6561, -25360. / 2187, 64448. / 6561, -212. / 729},
      {9017. / 3168, -355. / 33, 46732. / 5247, 49. / 176, -5103. / 18656},
      {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84}};
  static const double b5[7] = {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84, 0.};
  static const double b4[7] = {5179. / 57600,    0.,           7571. / 16695, 393. / 640,
                               -92097. / 339200, 187. / 2100, 1. / 40};
  double t = 0.0;
  double h = std::min(0.1, t_final);
  int rejected_in_a_row = 0;
  while (t < t_final) {
    h = std::min(h, t_final - t);
    Matrix k[7];
    k[0] = lind.apply_eig(x);
    for (int i = 1; i < 7; ++i) {
      Matrix xi = x;
      for (int j = 0; j < i; ++j)
        if (a[i][j] != 0.0) xi += (h * a[i][j]) * k[j];
      k[i] = lind.apply_eig(xi);
    }
    (void)c;
    Matrix x5 = x, err = Matrix::Zero(x.rows(), x.cols());
    for (int i = 0; i < 7; ++i) {
      if (b5[i] != 0.0) x5 += (h * b5[i]) * k[i];
      err += (h * (b5[i] - b4[i])) * k[i];
    }
    double scale = abs_tol + rel_tol * std::max(x.cwiseAbs().maxCoeff(), x5.cwiseAbs().maxCoeff());
    double e = err.cwiseAbs().maxCoeff() / scale;
    if (e <= 1.0) {
      t += h;
      x = std::move(x5);
      rejected_in_a_row = 0;
    } else if (++rejected_in_a_row > 60) {
      throw std::runtime_error("evolve: step control stalled at t=" + std::to_string(t) +
                               ", h=" + std::to_string(h) + ", err-ratio=" + std::to_string(e));
    }
    h *= std::clamp(0.9 * std::pow(std::max(e, 1e-10), -0.2), 0.2, 5.0);
    if (h < 1e-14 * std::max(1.0, t_final))
      throw std::runtime_error("evolve: step size underflow at t=" + std::to_string(t));
  }
  return x;
}

// phi1 composite: given the superoperator S, computes both e^{tS} v and the
// running integral with one small-step exponential. Sub-step chosen so
// ||h S||_1 stays near 1.
struct Phi1Propagator {
  Matrix step_exp;   // e^{hS}
  Matrix step_int;   // h phi1(hS) = integral_0^h e^{uS} du
  double h;
  int steps;
  Phi1Propagator(const Matrix& s, double t) {
    double norm = s.cwiseAbs().rowwise().sum().maxCoeff();
    steps = std::max(1, static_cast<int>(std::ceil(t * norm)));
    h = t / steps;
    Matrix hs = h * s;
    step_exp = hs.exp();
    // h phi1(hS) by series: h sum_k (hS)^k / (k+1)!
    Matrix term = Matrix::Identity(s.rows(), s.cols());
    Matrix acc = term;
    double fact = 1.0;
    for (int k = 1; k <= 25; ++k) {
      term = term * hs;
      fact *= (k + 1);
      acc += term / fact;
      if (term.cwiseAbs().maxCoeff() / fact < 1e-18) break;
    }
    step_int = h * acc;
  }
};

}  // namespace

DensityMatrix evolve(const LindbladOperator& lind, const Matrix& sigma0_lab, double t,
                     const EvolveOptions& opts) {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  const Spectrum& s = lind.spectrum();
  Matrix x = s.to_eigenbasis(sigma0_lab);
  if (t > 0.0) {
    if (!opts.force_ode && s.dim() <= opts.superop_max_dim) {
      Matrix prop = (t * lind.superoperator(opts.superop_max_dim)).exp();
      x = unvectorize(prop * vectorize(x), s.dim());
    } else {
      x = dopri_evolve(lind, std::move(x), t, opts.abs_tol, opts.rel_tol);
    }
  }
  DensityMatrix out(s.to_lab(x));
  out.validate(1e-8, 1e-9, 1e-8);
  return out;
}

DensityMatrix time_averaged_state(const LindbladOperator& lind, const Matrix& sigma0_lab, double t,
                                  const TimeAverageOptions& opts) {
  const Spectrum& s = lind.spectrum();
  if (t == 0.0) return DensityMatrix(sigma0_lab);
  if (t < 0.0) throw std::invalid_argument("time_averaged_state: t must be >= 0");
  Vector v0 = vectorize(s.to_eigenbasis(sigma0_lab));
  Matrix sup = lind.superoperator();
  Vector avg;
  if (opts.method == TimeAverageOptions::Method::Phi1Composite) {
    Phi1Propagator prop(sup, t);
    Vector v = v0;
    Vector integral = Vector::Zero(v0.size());
    for (int k = 0; k < prop.steps; ++k) {
      integral += prop.step_int * v;
      v = prop.step_exp * v;
    }
    avg = integral / t;
  } else {
    auto run = [&](int nodes) {
      auto rule = gauss_legendre(nodes, 0.0, t);
      std::sort(rule.begin(), rule.end(), [](auto& a, auto& b) { return a.x < b.x; });
      Vector acc = Vector::Zero(v0.size());
      Vector v = v0;
      double pos = 0.0;
      for (const auto& node : rule) {
        Matrix step = ((node.x - pos) * sup).exp();
        v = step * v;
        pos = node.x;
        acc += node.w * v;
      }
      return Vector(acc / t);
    };
    avg = run(opts.nodes);
    Vector avg2 = run(2 * opts.nodes);
    if ((avg - avg2).cwiseAbs().maxCoeff() > opts.doubling_tol)
      throw std::runtime_error("time_averaged_state: quadrature did not converge under doubling");
    avg = avg2;
  }
  DensityMatrix out(s.to_lab(unvectorize(avg, s.dim())));
  out.validate(1e-8, 1e-9, 1e-8);
  return out;
}

Matrix time_averaged_observable(const LindbladOperator& lind, const Matrix& obs_lab, double t) {
  const Spectrum& s = lind.spectrum();
  if (t <= 0.0) throw std::invalid_argument("time_averaged_observable: t must be > 0");
  Matrix sup = lind.superoperator_adjoint();
  Phi1Propagator prop(sup, t);
  Vector v = vectorize(s.to_eigenbasis(obs_lab));
  Vector integral = Vector::Zero(v.size());
  for (int k = 0; k < prop.steps; ++k) {
    integral += prop.step_int * v;
    v = prop.step_exp * v;
  }
  return s.to_lab(unvectorize(Vector(integral / t), s.dim()));
}

// ===========================================================================
// Detailed balance diagnostics
// ===========================================================================

Complex kms_inner(const Matrix& x, const Matrix& y, const RealVector& rho_diag) {
  RealVector r = rho_diag.array().sqrt();
  Matrix s = r.cast<Complex>().asDiagonal();
  return (x.adjoint() * s * y * s).trace();
}

double kms_detailed_balance_residual(const LindbladOperator& lind, int trials,
                                     std::uint64_t seed) {
  const Spectrum& s = lind.spectrum();
  RealVector rho_diag = gibbs_diagonal(s, lind.filter_params().beta);
  SplitMix64 g(derive_seed(seed, "kms-residual"));
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Matrix x = random_ginibre(s.dim(), g);
    Matrix y = random_ginibre(s.dim(), g);
    double nx = operator_norm(x), ny = operator_norm(y);
    for (int a = 0; a < lind.num_terms(); ++a) {
      Matrix lx = lind.apply_term_adjoint_eig(a, x);
      Matrix ly = lind.apply_term_adjoint_eig(a, y);
      Complex lhs = kms_inner(x, ly, rho_diag);
      Complex rhs = kms_inner(lx, y, rho_diag);
      worst = std::max(worst, std::abs(lhs - rhs) / (nx * ny));
    }
  }
  return worst;
}

Complex dirichlet_form(const LindbladOperator& lind, int a, const Matrix& x_eig,
                       const Matrix& y_eig, const Matrix& weight_eig) {
  const Spectrum& s = lind.spectrum();
  const FilterParams& fp = lind.filter_params();
  Eigen::SelfAdjointEigenSolver<Matrix> es(weight_eig);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("dirichlet_form: weight state must be full rank");
  Matrix w = es.operatorSqrt();

  PairWeightTable table(
      s,
      [fp](double d) {
        return std::exp(-d * d / (8.0 * fp.sigma * fp.sigma)) * g_fourier(fp, d);
      },
      [fp](double m) { return smeared_h(fp, m); });

  const Matrix& jump = lind.term(a).jump;
  Matrix xd = x_eig.adjoint();
  using kernels::weighted_jump_trace;
  Complex v = weighted_jump_trace(jump, w, Matrix(y_eig * w * xd), table) -
              weighted_jump_trace(jump, Matrix(w * y_eig), Matrix(w * xd), table) -
              weighted_jump_trace(jump, Matrix(xd * w), Matrix(y_eig * w), table) +
              weighted_jump_trace(jump, Matrix(xd * w * y_eig), w, table);
  return v;
}

// ===========================================================================
// Serialization
// ===========================================================================

namespace {
json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  int r = static_cast<int>(re.size()), c = static_cast<int>(re.at(0).size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  return m;
}

constexpr char kBinMagic[9] = "MSTBTAB1";

void write_matrix_binary(std::ofstream& f, const Matrix& m) {
  std::uint32_t r = static_cast<std::uint32_t>(m.rows()), c = static_cast<std::uint32_t>(m.cols());
  f.write(reinterpret_cast<const char*>(&r), 4);
  f.write(reinterpret_cast<const char*>(&c), 4);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      double re = m(i, j).real(), im = m(i, j).imag();
      f.write(reinterpret_cast<const char*>(&re), 8);
      f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

Matrix read_matrix_binary(std::ifstream& f) {
  std::uint32_t r = 0, c = 0;
  f.read(reinterpret_cast<char*>(&r), 4);
  f.read(reinterpret_cast<char*>(&c), 4);
  Matrix m(r, c);
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = 0; j < c; ++j) {
      double re, im;
      f.read(reinterpret_cast<char*>(&re), 8);
      f.read(reinterpret_cast<char*>(&im), 8);
      m(i, j) = Complex(re, im);
    }
  return m;
}
}  // namespace

void save_tables_json(const LindbladOperator& lind, const std::string& path) {
  json out;
  out["format"] = "metastab-tables";
  out["version"] = 1;
  out["beta"] = lind.filter_params().beta;
  out["sigma"] = lind.filter_params().sigma;
  out["eta"] = lind.eta();
  out["jumps"] = json::array();
  for (int a = 0; a < lind.num_terms(); ++a) {
    const auto& t = lind.term(a);
    out["jumps"].push_back(json{{"label", t.label},
                                {"jump", matrix_to_json(t.jump)},
                                {"decay", matrix_to_json(t.decay)},
                                {"coherent", matrix_to_json(t.coherent)}});
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << out.dump(1);
}

void save_tables_binary(const LindbladOperator& lind, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(kBinMagic, 8);
  double beta = lind.filter_params().beta, sigma = lind.filter_params().sigma, eta = lind.eta();
  f.write(reinterpret_cast<const char*>(&beta), 8);
  f.write(reinterpret_cast<const char*>(&sigma), 8);
  f.write(reinterpret_cast<const char*>(&eta), 8);
  std::uint32_t nterms = static_cast<std::uint32_t>(lind.num_terms());
  f.write(reinterpret_cast<const char*>(&nterms), 4);
  for (int a = 0; a < lind.num_terms(); ++a) {
    const auto& t = lind.term(a);
    std::uint32_t len = static_cast<std::uint32_t>(t.label.size());
    f.write(reinterpret_cast<const char*>(&len), 4);
    f.write(t.label.data(), len);
    write_matrix_binary(f, t.jump);
    write_matrix_binary(f, t.decay);
    write_matrix_binary(f, t.coherent);
  }
}

TableDump load_tables(const std::string& path) {
  TableDump dump;
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open " + path);
  char magic[8] = {};
  probe.read(magic, 8);
  if (std::string(magic, 8) == std::string(kBinMagic, 8)) {
    probe.read(reinterpret_cast<char*>(&dump.beta), 8);
    probe.read(reinterpret_cast<char*>(&dump.sigma), 8);
    probe.read(reinterpret_cast<char*>(&dump.eta), 8);
    std::uint32_t nterms = 0;
    probe.read(reinterpret_cast<char*>(&nterms), 4);
    for (std::uint32_t a = 0; a < nterms; ++a) {
      std::uint32_t len = 0;
      probe.read(reinterpret_cast<char*>(&len), 4);
      std::string label(len, ' ');
      probe.read(label.data(), len);
      dump.labels.push_back(label);
      dump.jump.push_back(read_matrix_binary(probe));
      dump.decay.push_back(read_matrix_binary(probe));
      dump.coherent.push_back(read_matrix_binary(probe));
    }
    return dump;
  }
  std::ifstream f(path);
  json in = json::parse(f);
  if (in.at("format") != "metastab-tables") throw std::runtime_error("not a table dump: " + path);
  dump.beta = in.at("beta");
  dump.sigma = in.at("sigma");
  dump.eta = in.at("eta");
  for (const auto& j : in.at("jumps")) {
    dump.labels.push_back(j.at("label"));
    dump.jump.push_back(matrix_from_json(j.at("jump")));
    dump.decay.push_back(matrix_from_json(j.at("decay")));
    dump.coherent.push_back(matrix_from_json(j.at("coherent")));
  }
  return dump;
}

}  // namespace metastab
