#include "spinbus/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinbus {

double ladder_coefficient(int twice_spin, int n, Ladder direction) {
  if (n < 0 || n > twice_spin)
    throw std::out_of_range("ladder_coefficient: n = " + std::to_string(n) +
                            " outside [0, " + std::to_string(twice_spin) + "]");
  switch (direction) {
    case Ladder::Raise:
      return std::sqrt(static_cast<double>(n) * (twice_spin - n + 1));
    case Ladder::Lower:
      return std::sqrt(static_cast<double>(n + 1) * (twice_spin - n));
  }
  return 0.0;
}

SectorOperator SectorOperator::from_triplets(
    int sector_n, int dim, const std::vector<Eigen::Triplet<double>>& entries) {
  SectorOperator op(sector_n, dim);
  if (dim < kDenseThreshold) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& t : entries) m(t.row(), t.col()) += t.value();
    op.dense_ = std::move(m);
  } else {
    Eigen::SparseMatrix<double> m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    op.sparse_ = std::move(m);
  }
  return op;
}

Eigen::MatrixXd SectorOperator::dense() const {
  if (dense_) return *dense_;
  return Eigen::MatrixXd(*sparse_);
}

double SectorOperator::coeff(int row, int col) const {
  return dense_ ? (*dense_)(row, col) : sparse_->coeff(row, col);
}

double SectorOperator::max_abs_coeff() const {
  if (dense_) return dense_->size() ? dense_->cwiseAbs().maxCoeff() : 0.0;
  double m = 0.0;
  for (int k = 0; k < sparse_->outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(*sparse_, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

Eigen::VectorXcd SectorOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("SectorOperator::apply: dimension mismatch");
  const Eigen::VectorXd re = v.real(), im = v.imag();
  Eigen::VectorXd ore, oim;
  if (dense_) {
    ore = (*dense_) * re;
    oim = (*dense_) * im;
  } else {
    ore = (*sparse_) * re;
    oim = (*sparse_) * im;
  }
  Eigen::VectorXcd out(dim_);
  out.real() = ore;
  out.imag() = oim;
  return out;
}

namespace detail {

std::vector<Eigen::Triplet<double>> hopping_triplets(const SectorBasis& basis,
                                                     const std::vector<HoppingBond>& bonds) {
  const int cap = basis.site_cap();
  std::vector<Eigen::Triplet<double>> entries;
  OccupationVector moved;
  for (int col = 0; col < basis.size(); ++col) {
    const OccupationVector& v = basis.state(col);
    for (const auto& bond : bonds) {
      // S+_a S-_b moves one excitation a -> b; the h.c. term moves b -> a.
      for (auto [from, to] : {std::pair{bond.site_a, bond.site_b},
                              std::pair{bond.site_b, bond.site_a}}) {
        if (v[from] == 0 || v[to] == cap) continue;
        const double amp = ladder_coefficient(cap, v[from], Ladder::Raise) *
                           ladder_coefficient(cap, v[to], Ladder::Lower);
        moved = v;
        --moved[from];
        ++moved[to];
        entries.emplace_back(basis.index_of(moved), col, -bond.coupling * amp);
      }
    }
  }
  return entries;
}

std::vector<Eigen::Triplet<double>> zeeman_triplets(const SectorBasis& basis,
                                                    int twice_spin, double field_h) {
  const double shift =
      -field_h * (0.5 * twice_spin * basis.num_sites() - basis.sector());
  std::vector<Eigen::Triplet<double>> entries;
  if (field_h == 0.0) return entries;
  entries.reserve(basis.size());
  for (int i = 0; i < basis.size(); ++i) entries.emplace_back(i, i, shift);
  return entries;
}

namespace {

std::vector<HoppingBond> bus_bonds(const ChainConfig& config) {
  // Chain site order (s, 1..N, r): bus sites are 1..N.
  std::vector<HoppingBond> bonds;
  for (int i = 1; i < config.bus_length; ++i)
    bonds.push_back({i, i + 1, config.coupling_j});
  return bonds;
}

std::vector<HoppingBond> register_bonds(const ChainConfig& config) {
  const int receiver = config.bus_length + 1;
  return {{0, 1, config.coupling_g}, {receiver, config.bus_length, config.coupling_g}};
}

void check_chain_basis(const ChainConfig& config, const SectorBasis& basis) {
  if (basis.num_sites() != config.sites() || basis.site_cap() != config.twice_spin)
    throw std::invalid_argument("sector basis does not match the chain config");
}

}  // namespace
}  // namespace detail

SectorOperator build_bus_hamiltonian(const ChainConfig& config, const SectorBasis& basis) {
  detail::check_chain_basis(config, basis);
  return SectorOperator::from_triplets(
      basis.sector(), basis.size(),
      detail::hopping_triplets(basis, detail::bus_bonds(config)));
}

SectorOperator build_interaction_hamiltonian(const ChainConfig& config,
                                             const SectorBasis& basis) {
  detail::check_chain_basis(config, basis);
  return SectorOperator::from_triplets(
      basis.sector(), basis.size(),
      detail::hopping_triplets(basis, detail::register_bonds(config)));
}

SectorOperator build_zeeman_hamiltonian(const ChainConfig& config, const SectorBasis& basis) {
  detail::check_chain_basis(config, basis);
  return SectorOperator::from_triplets(
      basis.sector(), basis.size(),
      detail::zeeman_triplets(basis, config.twice_spin, config.field_h));
}

SectorOperator build_total_hamiltonian(const ChainConfig& config, const SectorBasis& basis) {
  detail::check_chain_basis(config, basis);
  auto entries = detail::hopping_triplets(basis, detail::bus_bonds(config));
  auto reg = detail::hopping_triplets(basis, detail::register_bonds(config));
  auto zee = detail::zeeman_triplets(basis, config.twice_spin, config.field_h);
  entries.insert(entries.end(), reg.begin(), reg.end());
  entries.insert(entries.end(), zee.begin(), zee.end());
  return SectorOperator::from_triplets(basis.sector(), basis.size(), entries);
}

}  // namespace spinbus
