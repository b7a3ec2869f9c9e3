#include "spinbus/entanglement.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinbus/effective.hpp"

namespace spinbus {

void BipartiteDensity::validate() const {
  const int n = dim1 * dim2;
  if (rho.rows() != n || rho.cols() != n)
    throw std::domain_error("BipartiteDensity: shape does not match dims");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::domain_error("BipartiteDensity: not Hermitian");
  if (std::abs(std::real(rho.trace()) - 1.0) > 1e-10)
    throw std::domain_error("BipartiteDensity: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::domain_error("BipartiteDensity: negative eigenvalue");
}

double EntangledState::norm() const {
  double sq = 0.0;
  for (const auto& branch : branches) {
    const double n = branch.norm();
    sq += n * n;
  }
  return std::sqrt(sq);
}

Eigen::MatrixXcd EntangledState::register_density() const {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (int mu = 0; mu < dim; ++mu)
    for (int mup = 0; mup < dim; ++mup) {
      std::complex<double> overlap = 0.0;
      for (const auto& [n, amp] : branches[mu].sectors) {
        auto it = branches[mup].sectors.find(n);
        if (it != branches[mup].sectors.end()) overlap += it->second.dot(amp);
      }
      rho(mu, mup) = overlap;
    }
  return rho;
}

EntangledState entangled_initial(const ChainConfig& config) {
  config.validate();
  EntangledState state;
  state.dim = config.qudit_dim;
  const double weight = 1.0 / std::sqrt(static_cast<double>(config.qudit_dim));
  for (int mu = 0; mu < config.qudit_dim; ++mu) {
    OccupationVector occ(config.sites(), 0);
    occ[0] = mu;  // register b sits at the sender slot of the chain
    GlobalPureState branch = product_state(config, occ);
    for (auto& [n, amp] : branch.sectors) amp *= weight;
    state.branches.push_back(std::move(branch));
  }
  return state;
}

Eigen::MatrixXcd partial_transpose(const BipartiteDensity& rho, int party) {
  if (party != 1 && party != 2)
    throw std::invalid_argument("partial_transpose: party must be 1 or 2");
  const int d1 = rho.dim1, d2 = rho.dim2;
  Eigen::MatrixXcd out(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < d1; ++k)
        for (int l = 0; l < d2; ++l) {
          if (party == 1)
            out(i * d2 + j, k * d2 + l) = rho.rho(k * d2 + j, i * d2 + l);
          else
            out(i * d2 + j, k * d2 + l) = rho.rho(i * d2 + l, k * d2 + j);
        }
  return out;
}

double log_negativity(const BipartiteDensity& rho) {
  const Eigen::MatrixXcd pt = partial_transpose(rho, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  double negative_sum = 0.0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda < -1e-12) negative_sum += lambda;
  }
  return std::log2(1.0 + 2.0 * std::abs(negative_sum));
}

BipartiteDensity reduce_to_register_pair(const EntangledState& state) {
  const int d = state.dim;
  // The ancilla index doubles as the state index of the cross-Gram, so the
  // Gram matrix of the branches over (rest, c) is rho_ac itself.
  return {receiver_cross_gram(state.branches, d), d, d};
}

double distribution_efficiency(const ChainEngine& engine, double tau,
                               bool apply_phase_gate) {
  const ChainConfig& config = engine.config();
  EntangledState state = entangled_initial(config);
  for (auto& branch : state.branches) branch = engine.evolve(branch, tau);
  BipartiteDensity rho_ac = reduce_to_register_pair(state);

  if (apply_phase_gate) {
    const int d = config.qudit_dim;
    const Eigen::VectorXd gate = phase_gate(zero_mode_index(config), d);
    Eigen::VectorXcd full(d * d);
    for (int mu = 0; mu < d; ++mu)
      for (int n = 0; n < d; ++n) full(mu * d + n) = gate(n);
    rho_ac.rho = full.asDiagonal() * rho_ac.rho * full.conjugate().asDiagonal();
  }

  const double efficiency =
      log_negativity(rho_ac) / std::log2(static_cast<double>(config.qudit_dim));
  return std::min(efficiency, 1.0);
}

double distribution_efficiency(const ChainConfig& config, double tau,
                               bool apply_phase_gate) {
  return distribution_efficiency(ChainEngine(config), tau, apply_phase_gate);
}

}  // namespace spinbus
