#include "metastab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "metastab/quadrature.hpp"

namespace metastab {

namespace {
inline int spin(std::uint32_t config, int site) { return (config >> site) & 1u ? -1 : 1; }
}

double SpinModel::energy(std::uint32_t config) const {
  double e = 0.0;
  for (const auto& [i, j, jij] : couplings) e -= jij * spin(config, i) * spin(config, j);
  for (int i = 0; i < sites; ++i)
    if (fields[i] != 0.0) e -= fields[i] * spin(config, i);
  return e;
}

double SpinModel::energy_delta_flip(std::uint32_t config, int site) const {
  // flipping s_i negates every term containing it
  double local = 0.0;
  for (const auto& [i, j, jij] : couplings) {
    if (i == site) local -= jij * spin(config, i) * spin(config, j);
    else if (j == site) local -= jij * spin(config, i) * spin(config, j);
  }
  local -= fields[site] * spin(config, site);
  return -2.0 * local;
}

SpinModel SpinModel::ferromagnet_block(int m, double beta) {
  SpinModel mod;
  mod.sites = m * m;
  mod.beta = beta;
  mod.fields.assign(mod.sites, 0.0);
  auto idx = [m](int r, int c) { return r * m + c; };
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      if (c + 1 < m) mod.couplings.push_back({idx(r, c), idx(r, c + 1), 1.0});
      if (r + 1 < m) mod.couplings.push_back({idx(r, c), idx(r + 1, c), 1.0});
    }
  return mod;
}

SpinModel SpinModel::single_spin(double field, double beta) {
  SpinModel mod;
  mod.sites = 1;
  mod.beta = beta;
  mod.fields = {field};
  return mod;
}

SpinModel SpinModel::chain(int sites, double coupling, double beta) {
  SpinModel mod;
  mod.sites = sites;
  mod.beta = beta;
  mod.fields.assign(sites, 0.0);
  for (int i = 0; i + 1 < sites; ++i) mod.couplings.push_back({i, i + 1, coupling});
  return mod;
}

// ===========================================================================
// Exact chain
// ===========================================================================

ClassicalChain::ClassicalChain(SpinModel model, RateKind rates, std::vector<int> active_sites)
    : model_(std::move(model)), rates_(rates), active_(std::move(active_sites)) {
  if (model_.sites > 20) throw std::length_error("ClassicalChain: exact mode capped at 20 spins");
  if (active_.empty()) {
    active_.resize(model_.sites);
    std::iota(active_.begin(), active_.end(), 0);
  }
  const std::size_t ns = num_states();
  log_pi_.resize(ns);
  double max_neg = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < ns; ++x) {
    log_pi_[x] = -model_.beta * model_.energy(static_cast<std::uint32_t>(x));
    max_neg = std::max(max_neg, log_pi_[x]);
  }
  double z = 0.0;
  for (double lp : log_pi_) z += std::exp(lp - max_neg);
  double log_z = max_neg + std::log(z);
  for (double& lp : log_pi_) lp -= log_z;
}

double ClassicalChain::flip_rate(std::uint32_t x, int site) const {
  double de = model_.energy_delta_flip(x, site);
  double b = model_.beta;
  if (rates_ == RateKind::HeatBath) return 1.0 / (1.0 + std::exp(b * de));
  return std::min(1.0, std::exp(-b * de));
}

std::vector<double> ClassicalChain::stationary() const {
  std::vector<double> pi(num_states());
  for (std::size_t x = 0; x < pi.size(); ++x) pi[x] = std::exp(log_pi_[x]);
  return pi;
}

std::vector<double> ClassicalChain::apply_generator(const std::vector<double>& nu) const {
  const std::size_t ns = num_states();
  if (nu.size() != ns) throw std::invalid_argument("apply_generator: size mismatch");
  std::vector<double> out(ns, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t xi = 0; xi < static_cast<std::int64_t>(ns); ++xi) {
    auto x = static_cast<std::uint32_t>(xi);
    double acc = 0.0;
    for (int site : active_) {
      std::uint32_t y = x ^ (1u << site);
      acc += flip_rate(y, site) * nu[y] - flip_rate(x, site) * nu[x];
    }
    out[xi] = acc;
  }
  return out;
}

std::vector<double> ClassicalChain::evolve(const std::vector<double>& nu, double t,
                                           double tol) const {
  // uniformization: e^{tL} = e^{-Lambda t} sum_k (Lambda t)^k / k! P^k,
  // P = I + L / Lambda, Lambda >= max total exit rate (site count suffices,
  // rates are <= 1).
  const double lambda = static_cast<double>(active_.size());
  if (t == 0.0 || lambda == 0.0) return nu;
  std::vector<double> term = nu, acc(nu.size(), 0.0);
  double lt = lambda * t;
  double log_weight = -lt;  // log of e^{-lt} (lt)^k / k! at k = 0
  double remaining = 1.0;
  for (int k = 0;; ++k) {
    double w = std::exp(log_weight);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * term[i];
    remaining -= w;
    if (remaining < tol && k > lt) break;
    if (k > 40 + 4 * lt + 10 * std::sqrt(lt)) break;
    // term <- P term
    std::vector<double> gen = apply_generator(term);
    for (std::size_t i = 0; i < term.size(); ++i) term[i] += gen[i] / lambda;
    log_weight += std::log(lt) - std::log(k + 1.0);
  }
  return acc;
}

double ClassicalChain::detailed_balance_defect() const {
  double worst = 0.0;
  const std::size_t ns = num_states();
  for (std::size_t x = 0; x < ns; ++x)
    for (int site : active_) {
      std::uint32_t y = static_cast<std::uint32_t>(x) ^ (1u << site);
      double lhs = std::exp(log_pi_[x]) * flip_rate(static_cast<std::uint32_t>(x), site);
      double rhs = std::exp(log_pi_[y]) * flip_rate(y, site);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc;
}

double l1_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

double distribution_entropy(const std::vector<double>& p) {
  double acc = 0.0;
  for (double x : p)
    if (x > 1e-300) acc -= x * std::log(x);
  return acc;
}

// ===========================================================================
// Entropy production and the discrete Fisher identity
// ===========================================================================

double classical_ep(const ClassicalChain& chain, const std::vector<double>& nu) {
  auto pi = chain.stationary();
  for (std::size_t x = 0; x < nu.size(); ++x)
    if (nu[x] <= 0.0)
      throw std::invalid_argument("classical_ep: nu must have full support; mix in pi first");
  auto gen = chain.apply_generator(nu);
  double acc = 0.0;
  for (std::size_t x = 0; x < nu.size(); ++x)
    acc -= gen[x] * (std::log(nu[x]) - std::log(pi[x]));
  return acc;
}

double classical_fisher(const ClassicalChain& chain, const std::vector<double>& nu, int nodes) {
  auto pi = chain.stationary();
  for (std::size_t x = 0; x < nu.size(); ++x)
    if (nu[x] <= 0.0)
      throw std::invalid_argument("classical_fisher: nu must have full support");
  auto rule = gauss_legendre(nodes, 0.0, 1.0);
  double acc = 0.0;
  const std::size_t ns = nu.size();
  for (std::size_t xi = 0; xi < ns; ++xi) {
    auto x = static_cast<std::uint32_t>(xi);
    double fx = nu[xi] / pi[xi];
    for (int site : chain.active_sites()) {
      std::uint32_t y = x ^ (1u << site);
      double fy = nu[y] / pi[y];
      double logr = std::log(fy) - std::log(fx);
      if (logr == 0.0) continue;
      // (1/2) pi(x) r(x->y) log^2(fy/fx) * integral fx^{1-s} fy^s ds
      double s_int = 0.0;
      for (const auto& node : rule)
        s_int += node.w * std::pow(fx, 1.0 - node.x) * std::pow(fy, node.x);
      acc += 0.5 * pi[xi] * chain.flip_rate(x, site) * logr * logr * s_int;
    }
  }
  return acc;
}

ClassicalAdbReport classical_adb_report(const ClassicalChain& chain,
                                        const std::vector<double>& nu) {
  auto pi = chain.stationary();
  ClassicalAdbReport rep;
  double weight_total = 0.0, weighted_sum = 0.0;
  const std::size_t ns = nu.size();
  for (std::size_t xi = 0; xi < ns; ++xi) {
    auto x = static_cast<std::uint32_t>(xi);
    if (nu[xi] <= 0.0) continue;
    for (int site : chain.active_sites()) {
      std::uint32_t y = x ^ (1u << site);
      double w = nu[xi] * chain.flip_rate(x, site);
      if (nu[y] <= 0.0) {
        rep.weight_on_boundary += w;
        continue;
      }
      double dev = std::abs(std::log(nu[xi] / nu[y]) - std::log(pi[xi] / pi[y]));
      weighted_sum += w * dev;
      weight_total += w;
      rep.max = std::max(rep.max, dev);
    }
  }
  rep.mean = weight_total > 0.0 ? weighted_sum / weight_total : 0.0;
  return rep;
}

// ===========================================================================
// Duplicated-majority block ferromagnets
// ===========================================================================

namespace {

// majority sector with ties assigned to both: config belongs to sector s when
// the count of spins equal to s is >= half
bool in_sector(std::uint32_t config, int sites, int bit) {
  int down = 0;
  for (int i = 0; i < sites; ++i) down += (config >> i) & 1u;
  int up = sites - down;
  int votes = bit == 0 ? up : down;
  return 2 * votes >= sites;
}

}  // namespace

std::vector<double> conditioned_block_measure(const SpinModel& block, int bit) {
  ClassicalChain chain(block);
  auto pi = chain.stationary();
  double z = 0.0;
  for (std::size_t x = 0; x < pi.size(); ++x) {
    if (!in_sector(static_cast<std::uint32_t>(x), block.sites, bit)) pi[x] = 0.0;
    z += pi[x];
  }
  for (double& p : pi) p /= z;
  return pi;
}

std::vector<double> block_pair_mixture(const SpinModel& block) {
  auto mu0 = conditioned_block_measure(block, 0);
  auto mu1 = conditioned_block_measure(block, 1);
  const std::size_t ns = mu0.size();
  std::vector<double> joint(ns * ns, 0.0);
  for (std::size_t x = 0; x < ns; ++x)
    for (std::size_t y = 0; y < ns; ++y)
      joint[x * ns + y] = 0.5 * (mu0[x] * mu0[y] + mu1[x] * mu1[y]);
  return joint;
}

HardDisksReport hard_disks_metastable(int lattice_l, int block_m, double beta,
                                      std::uint64_t pattern_seed) {
  if (lattice_l % block_m != 0)
    throw std::invalid_argument("hard_disks: block size must divide the lattice side");
  if (block_m * block_m > 16)
    throw std::length_error("hard_disks exact mode: block area capped at 16 spins");
  HardDisksReport rep;
  rep.lattice_l = lattice_l;
  rep.block_m = block_m;
  int per_side = lattice_l / block_m;
  rep.block_pairs = per_side * per_side;

  SpinModel block = SpinModel::ferromagnet_block(block_m, beta);
  auto mu0 = conditioned_block_measure(block, 0);
  auto mu1 = conditioned_block_measure(block, 1);
  const std::size_t ns = mu0.size();

  // pair mutual information: 2 H(marginal) - H(joint), bucketed by the
  // (energy, sector-membership) classes so the joint never materializes
  std::vector<double> marg(ns);
  for (std::size_t x = 0; x < ns; ++x) marg[x] = 0.5 * (mu0[x] + mu1[x]);
  struct Bucket {
    double m0, m1;
    double count;
  };
  std::map<std::pair<long long, long long>, Bucket> buckets;
  for (std::size_t x = 0; x < ns; ++x) {
    auto key = std::make_pair(static_cast<long long>(std::llround(mu0[x] * 1e15)),
                              static_cast<long long>(std::llround(mu1[x] * 1e15)));
    auto it = buckets.find(key);
    if (it == buckets.end()) buckets[key] = {mu0[x], mu1[x], 1.0};
    else it->second.count += 1.0;
  }
  double h_joint = 0.0;
  for (const auto& [k1, b1] : buckets)
    for (const auto& [k2, b2] : buckets) {
      double p = 0.5 * (b1.m0 * b2.m0 + b1.m1 * b2.m1);
      if (p > 1e-300) h_joint -= b1.count * b2.count * p * std::log(p);
    }
  rep.mi_block = 2.0 * distribution_entropy(marg) - h_joint;
  rep.mi_cut = rep.block_pairs * rep.mi_block;

  // stationarity of the conditioned block measure under the full-block Glauber
  ClassicalChain chain(block);
  rep.stationarity_block = l1_norm(chain.apply_generator(mu0));
  rep.stationarity_site = rep.stationarity_block / (block_m * block_m);

  // exact pair-level stationarity where the doubled register still fits
  if (2 * block.sites <= 20) {
    SpinModel pair = block;
    pair.sites = 2 * block.sites;
    pair.fields.assign(pair.sites, 0.0);
    auto base = block.couplings;
    for (const auto& [i, j, jij] : base) pair.couplings.push_back({i + block.sites, j + block.sites, jij});
    ClassicalChain pair_chain(pair);
    rep.stationarity_pair = l1_norm(pair_chain.apply_generator(block_pair_mixture(block)));
  }

  SplitMix64 g(derive_seed(pattern_seed, "hard-disks-pattern"));
  for (int b = 0; b < rep.block_pairs; ++b)
    rep.sample_pattern.push_back(static_cast<int>(g.uniform_below(2)));
  return rep;
}

// ===========================================================================
// Recovery
// ===========================================================================

std::vector<double> resample_region(const std::vector<double>& nu, int sites,
                                    const std::set<int>& region,
                                    const std::vector<double>& tau_region) {
  const std::size_t ns = nu.size();
  std::vector<int> reg(region.begin(), region.end());
  const int k = static_cast<int>(reg.size());
  if (tau_region.size() != (std::size_t(1) << k))
    throw std::invalid_argument("resample_region: tau size mismatch");
  (void)sites;
  std::vector<double> out(ns, 0.0);
  std::uint32_t mask = 0;
  for (int q : reg) mask |= 1u << q;
  for (std::size_t x = 0; x < ns; ++x) {
    // marginal over the region: accumulate nu onto the region-cleared index
    std::uint32_t base = static_cast<std::uint32_t>(x) & ~mask;
    if (base != x) continue;  // visit each complement configuration once
    double marg = 0.0;
    // iterate region assignments via subset enumeration of mask
    std::uint32_t sub = 0;
    do {
      marg += nu[base | sub];
      sub = (sub - mask) & mask;
    } while (sub != 0);
    sub = 0;
    do {
      int ridx = 0;
      for (int b = 0; b < k; ++b)
        if (sub & (1u << reg[b])) ridx |= 1 << b;
      out[base | sub] = marg * tau_region[ridx];
      sub = (sub - mask) & mask;
    } while (sub != 0);
  }
  return out;
}

std::vector<ClassicalRecoveryRow> classical_recovery_experiment(
    const ClassicalChain& full_chain, const std::vector<double>& nu, const std::set<int>& region,
    const std::vector<double>& tau_region, const std::vector<double>& t_grid) {
  ClassicalChain region_chain(full_chain.model(), RateKind::HeatBath,
                              std::vector<int>(region.begin(), region.end()));
  auto resampled = resample_region(nu, full_chain.model().sites, region, tau_region);
  double meta = l1_norm(region_chain.apply_generator(nu));
  std::vector<ClassicalRecoveryRow> rows;
  for (double t : t_grid) {
    ClassicalRecoveryRow row;
    row.t = t;
    auto rec = region_chain.evolve(resampled, t);
    auto drift = region_chain.evolve(nu, t);
    row.total_error = l1_distance(nu, rec);
    row.leakage = l1_distance(nu, drift);
    row.mixing = l1_distance(drift, rec);
    row.leakage_bound = t * meta;
    rows.push_back(row);
  }
  return rows;
}

// ===========================================================================
// Gillespie (MCMC mode)
// ===========================================================================

GillespieResult gillespie_run(const ClassicalChain& chain, std::uint32_t start, double t_max,
                              SplitMix64& rng) {
  GillespieResult res;
  res.final_config = start;
  const auto& sites = chain.active_sites();
  while (true) {
    double total = 0.0;
    std::vector<double> rates(sites.size());
    for (std::size_t a = 0; a < sites.size(); ++a) {
      rates[a] = chain.flip_rate(res.final_config, sites[a]);
      total += rates[a];
    }
    if (total <= 0.0) break;
    double dt = -std::log(std::max(rng.uniform(), 1e-300)) / total;
    if (res.elapsed + dt > t_max) break;
    res.elapsed += dt;
    double u = rng.uniform() * total;
    std::size_t pick = 0;
    for (; pick + 1 < sites.size(); ++pick) {
      if (u < rates[pick]) break;
      u -= rates[pick];
    }
    res.final_config ^= 1u << sites[pick];
    ++res.jumps;
  }
  res.elapsed = t_max;
  return res;
}

McEstimate gillespie_estimate(const ClassicalChain& chain, std::uint32_t start, double t,
                              const std::function<double(std::uint32_t)>& observable, int samples,
                              std::uint64_t seed) {
  McEstimate est;
  est.samples = samples;
  double sum = 0.0, sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    SplitMix64 rng(derive_seed(seed, "gillespie", static_cast<std::uint64_t>(s)));
    auto run = gillespie_run(chain, start, t, rng);
    double v = observable(run.final_config);
    sum += v;
    sq += v * v;
  }
  est.mean = sum / samples;
  double var = std::max(0.0, sq / samples - est.mean * est.mean);
  est.ci_halfwidth = 1.96 * std::sqrt(var / samples);
  return est;
}

}  // namespace metastab
