#include "metastab/infotheory.hpp"

#include <cmath>

#include "metastab/functionals.hpp"
#include "metastab/spectrum.hpp"

namespace metastab {

Bipartition Bipartition::make(int n, std::set<int> region) {
  Bipartition b;
  b.n = n;
  b.region = std::move(region);
  for (int q = 0; q < n; ++q)
    if (!b.region.count(q)) b.complement.insert(q);
  return b;
}

Matrix partial_trace(const Matrix& state, int n, const std::set<int>& keep) {
  std::vector<int> kept(keep.begin(), keep.end());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!keep.count(q)) traced.push_back(q);
  const int dk = 1 << kept.size();
  const int dt = 1 << traced.size();
  // qubit q occupies bit (n-1-q) of the computational index
  auto assemble = [&](int kidx, int tidx) {
    int full = 0;
    for (std::size_t b = 0; b < kept.size(); ++b)
      if (kidx & (1 << (kept.size() - 1 - b))) full |= 1 << (n - 1 - kept[b]);
    for (std::size_t b = 0; b < traced.size(); ++b)
      if (tidx & (1 << (traced.size() - 1 - b))) full |= 1 << (n - 1 - traced[b]);
    return full;
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex acc(0, 0);
      for (int t = 0; t < dt; ++t) acc += state(assemble(i, t), assemble(j, t));
      out(i, j) = acc;
    }
  return out;
}

double mutual_information(const Matrix& state, const Bipartition& cut) {
  Matrix a = partial_trace(state, cut.n, cut.region);
  Matrix b = partial_trace(state, cut.n, cut.complement);
  return von_neumann_entropy(a) + von_neumann_entropy(b) - von_neumann_entropy(state);
}

double boundary_norm(const HamiltonianSpec& h, const Bipartition& cut) {
  auto crossing = h.crossing_terms(cut.region);
  if (crossing.empty()) return 0.0;
  Matrix sum = Matrix::Zero(h.dim(), h.dim());
  for (int g : crossing) {
    const auto& t = h.terms()[g];
    sum += t.coefficient * embed_on_support(t.block, t.support, h.num_qubits());
  }
  return operator_norm(sum);
}

FreeEnergyDecomposition free_energy_decomposition(const Matrix& sigma, const Bipartition& cut,
                                                  const HamiltonianSpec& h, double beta) {
  FreeEnergyDecomposition out;
  Matrix ham = h.assemble_dense();
  Matrix sig_a = partial_trace(sigma, cut.n, cut.region);
  Matrix sig_b = partial_trace(sigma, cut.n, cut.complement);
  // product state ordered back into the full register
  Matrix prod = embed_on_support(sig_a, cut.region, cut.n);
  Matrix prod_b = embed_on_support(sig_b, cut.complement, cut.n);
  // embeddings of density blocks are only valid as factors; take the product
  prod = prod * prod_b;

  out.lhs = beta * (free_energy(sigma, ham, beta) - free_energy(prod, ham, beta));
  out.mutual_information = mutual_information(sigma, cut);
  Matrix dh = Matrix::Zero(h.dim(), h.dim());
  for (int g : h.crossing_terms(cut.region)) {
    const auto& t = h.terms()[g];
    dh += t.coefficient * embed_on_support(t.block, t.support, h.num_qubits());
  }
  out.boundary_energy = beta * (dh * (sigma - prod)).trace().real();
  out.residual = out.lhs - out.mutual_information - out.boundary_energy;
  return out;
}

std::vector<AreaLawRow> area_law_audit(const Matrix& sigma, const HamiltonianSpec& h, double beta,
                                       const std::vector<std::set<int>>& cuts,
                                       double recovery_error) {
  std::vector<AreaLawRow> rows;
  Matrix ham = h.assemble_dense();
  double ham_norm = operator_norm(ham);
  for (const auto& region : cuts) {
    Bipartition cut = Bipartition::make(h.num_qubits(), region);
    AreaLawRow row;
    row.cut_label = "A={";
    for (int q : region) row.cut_label += std::to_string(q) + ",";
    if (!region.empty()) row.cut_label.pop_back();
    row.cut_label += "}";
    row.mi_nats = mutual_information(sigma, cut);
    row.mi_bits = row.mi_nats / std::log(2.0);
    row.bound = 2.0 * beta * boundary_norm(h, cut);
    if (recovery_error > 0.0) {
      double corr = std::max({std::log(1.0 / recovery_error), beta * ham_norm,
                              static_cast<double>(h.num_qubits())});
      row.bound += 4.0 * recovery_error * corr;
    }
    row.slack = row.bound - row.mi_nats;
    row.pass = row.slack >= -1e-10;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace metastab
