#include "spinbus/transfer.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "spinbus/effective.hpp"
#include "spinbus/errors.hpp"

namespace spinbus {

void QuditAmplitudes::validate() const {
  if (dim() < 2) throw std::domain_error("QuditAmplitudes: need at least 2 levels");
  if (std::abs(alpha.norm() - 1.0) > 1e-12)
    throw std::domain_error("QuditAmplitudes: state is not normalized");
}

QuditAmplitudes QuditAmplitudes::uniform(int d) {
  return {Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)))};
}

QuditAmplitudes QuditAmplitudes::basis_state(int d, int mu) {
  if (mu < 0 || mu >= d) throw std::domain_error("QuditAmplitudes: level outside [0, d)");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(d);
  a(mu) = 1.0;
  return {std::move(a)};
}

QuditAmplitudes QuditAmplitudes::normalized(Eigen::VectorXcd coefficients) {
  const double n = coefficients.norm();
  if (!(n > 0.0)) throw std::domain_error("QuditAmplitudes: zero vector");
  return {coefficients / n};
}

double QuditDensity::fidelity_with(const QuditAmplitudes& target) const {
  if (target.dim() != dim())
    throw std::invalid_argument("fidelity_with: dimension mismatch");
  return std::real(target.alpha.dot(rho * target.alpha));
}

void QuditDensity::validate(bool require_unit_trace) const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::domain_error("QuditDensity: not Hermitian");
  const double tr = std::real(rho.trace());
  if (require_unit_trace && std::abs(tr - 1.0) > 1e-10)
    throw std::domain_error("QuditDensity: trace differs from 1");
  if (tr > 1.0 + 1e-10) throw std::domain_error("QuditDensity: trace exceeds 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::domain_error("QuditDensity: negative eigenvalue");
}

GlobalPureState initial_transfer_state(const ChainConfig& config,
                                       const QuditAmplitudes& alpha) {
  config.validate();
  alpha.validate();
  if (alpha.dim() != config.qudit_dim)
    throw std::domain_error("initial_transfer_state: amplitude count differs from d");
  if (config.qudit_dim - 1 > config.cap())
    throw std::domain_error("initial_transfer_state: excitation cap below d-1");

  GlobalPureState state;
  state.config = config;
  for (int mu = 0; mu < config.qudit_dim; ++mu) {
    if (alpha.alpha(mu) == std::complex<double>(0.0, 0.0)) continue;
    OccupationVector occ(config.sites(), 0);
    occ[0] = mu;
    const SectorBasis basis = enumerate_sector(config, mu);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.size());
    amp(basis.index_of(occ)) = alpha.alpha(mu);
    state.sectors.emplace(mu, std::move(amp));
  }
  return state;
}

Eigen::MatrixXcd receiver_cross_gram(const std::vector<GlobalPureState>& states,
                                     int keep_dim) {
  if (states.empty()) throw std::invalid_argument("receiver_cross_gram: no states");
  if (keep_dim < 1) throw std::invalid_argument("receiver_cross_gram: keep_dim < 1");
  const ChainConfig& config = states.front().config;
  const int m = static_cast<int>(states.size());
  const int width = m * keep_dim;

  // Group amplitudes by the occupations of everything but the receiver.
  // Each distinct rest configuration contributes one rank-one update.
  std::map<OccupationVector, Eigen::VectorXcd> rows;
  std::map<int, SectorBasis> bases;
  for (int a = 0; a < m; ++a) {
    const GlobalPureState& psi = states[a];
    if (psi.config.sites() != config.sites() || psi.config.twice_spin != config.twice_spin)
      throw std::invalid_argument("receiver_cross_gram: mismatched chain shapes");
    for (const auto& [n, amp] : psi.sectors) {
      auto it = bases.find(n);
      if (it == bases.end())
        it = bases.emplace(n, SectorBasis(n, config.sites(), config.twice_spin)).first;
      const SectorBasis& basis = it->second;
      if (basis.size() != amp.size())
        throw std::invalid_argument("receiver_cross_gram: state/basis size mismatch");
      for (int i = 0; i < basis.size(); ++i) {
        if (amp(i) == std::complex<double>(0.0, 0.0)) continue;
        const OccupationVector& occ = basis.state(i);
        const int receiver = occ.back();
        if (receiver >= keep_dim) continue;
        OccupationVector rest(occ.begin(), occ.end() - 1);
        auto [rit, inserted] = rows.emplace(std::move(rest), Eigen::VectorXcd());
        if (inserted) rit->second = Eigen::VectorXcd::Zero(width);
        rit->second(a * keep_dim + receiver) += amp(i);
      }
    }
  }

  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(width, width);
  for (const auto& [rest, w] : rows) gram.noalias() += w * w.adjoint();
  return gram;
}

QuditDensity reduce_to_receiver(const GlobalPureState& state, int receiver_dim) {
  return {receiver_cross_gram({state}, receiver_dim)};
}

QuditDensity reduce_to_receiver(const StateEnsemble& ensemble, int receiver_dim) {
  if (ensemble.empty()) throw std::invalid_argument("reduce_to_receiver: empty ensemble");
  Eigen::MatrixXcd rho =
      Eigen::MatrixXcd::Zero(receiver_dim, receiver_dim);
  for (const auto& member : ensemble)
    rho += member.weight * receiver_cross_gram({member.state}, receiver_dim);
  return {std::move(rho)};
}

Eigen::VectorXcd receiver_correction(const ChainConfig& config, double tau,
                                     const FidelityOptions& options) {
  using namespace std::complex_literals;
  const int d = config.qudit_dim;
  Eigen::VectorXcd diag = Eigen::VectorXcd::Ones(d);
  if (options.apply_phase_gate) {
    const int kappa = zero_mode_index(config);  // throws for even N
    diag = phase_gate(kappa, d).cast<std::complex<double>>();
  }
  if (options.apply_field_phase && config.field_h != 0.0) {
    for (int n = 0; n < d; ++n)
      diag(n) *= std::exp(1i * (config.field_h * n * tau));
  }
  return diag;
}

double corrected_fidelity(const ChainEngine& engine, const QuditAmplitudes& alpha,
                          double tau, const FidelityOptions& options) {
  const ChainConfig& config = engine.config();
  const Eigen::VectorXcd correction = receiver_correction(config, tau, options);
  const GlobalPureState evolved = engine.evolve(initial_transfer_state(config, alpha), tau);
  QuditDensity rho = reduce_to_receiver(evolved, config.qudit_dim);
  rho.rho = correction.asDiagonal() * rho.rho * correction.conjugate().asDiagonal();
  return rho.fidelity_with(alpha);
}

double corrected_fidelity(const ChainConfig& config, const QuditAmplitudes& alpha,
                          double tau, const FidelityOptions& options) {
  return corrected_fidelity(ChainEngine(config), alpha, tau, options);
}

}  // namespace spinbus
