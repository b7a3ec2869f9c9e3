#include "spinbus/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spinbus/engine.hpp"
#include "spinbus/errors.hpp"
#include "spinbus/haar.hpp"
#include "spinbus/hamiltonian.hpp"
#include "spinbus/propagator.hpp"

namespace spinbus {

namespace {

constexpr double kWeightCutoff = 1e-12;

std::vector<detail::HoppingBond> bare_bus_bonds(const ChainConfig& config) {
  std::vector<detail::HoppingBond> bonds;
  for (int i = 0; i + 1 < config.bus_length; ++i)
    bonds.push_back({i, i + 1, config.coupling_j});
  return bonds;
}

// Eigenpairs of the bare bus Hamiltonian for sectors 0..n_cut, sorted by
// energy (ties by sector) so Boltzmann weights come out descending for every
// temperature.
std::vector<ThermalMember> bus_eigenpairs(const ChainConfig& config, int n_cut) {
  config.validate();
  const int bus_sites = config.bus_length;
  const int full = config.twice_spin * bus_sites;
  if (n_cut < 0 || n_cut > full)
    throw std::domain_error("bus excitation cut must lie in [0, 2S*N]");

  const auto bonds = bare_bus_bonds(config);
  std::vector<ThermalMember> members;
  for (int m = 0; m <= n_cut; ++m) {
    SectorBasis basis(m, bus_sites, config.twice_spin);
    auto entries = detail::hopping_triplets(basis, bonds);
    auto zeeman = detail::zeeman_triplets(basis, config.twice_spin, config.field_h);
    entries.insert(entries.end(), zeeman.begin(), zeeman.end());
    const SectorSpectrum spec =
        decompose(SectorOperator::from_triplets(m, basis.size(), entries));
    for (int i = 0; i < basis.size(); ++i) {
      ThermalMember member;
      member.energy = spec.eigenvalues(i);
      member.bus_sector = m;
      member.bus_vector = spec.eigenvectors.col(i);
      members.push_back(std::move(member));
    }
  }
  std::stable_sort(members.begin(), members.end(),
                   [](const ThermalMember& a, const ThermalMember& b) {
                     if (a.energy != b.energy) return a.energy < b.energy;
                     return a.bus_sector < b.bus_sector;
                   });
  return members;
}

// Rigorous lower bound on any bus energy in sector m: Zeeman value plus a
// Gershgorin bound on the XX block (at most 2(N-1) offdiagonals per row,
// each bounded by the largest admissible ladder product). Exact for N = 1.
double sector_energy_lower_bound(const ChainConfig& config, int m) {
  const double zeeman =
      -config.field_h * (0.5 * config.twice_spin * config.bus_length - m);
  double ladder_sq_max = 0.0;
  const int n_top = std::min(m, config.twice_spin);
  for (int n = 1; n <= n_top; ++n)
    ladder_sq_max =
        std::max(ladder_sq_max, static_cast<double>(n) * (config.twice_spin - n + 1));
  return zeeman - 2.0 * (config.bus_length - 1) * config.coupling_j * ladder_sq_max;
}

double tail_weight_bound(const ChainConfig& config, int n_cut, double temperature,
                         double ground_energy) {
  const int full = config.twice_spin * config.bus_length;
  double tail = 0.0;
  for (int m = n_cut + 1; m <= full; ++m) {
    const double count =
        static_cast<double>(sector_dimension(config.bus_length, config.twice_spin, m));
    tail += count * std::exp(-(sector_energy_lower_bound(config, m) - ground_energy) /
                             temperature);
  }
  return tail;
}

struct BoltzmannWeights {
  std::vector<double> weights;  // aligned with the sorted member list
  double partition_value = 0.0;
  double tail = 0.0;
};

// Normalized weights over the retained members; sub-cutoff weights are
// zeroed and folded into the tail, so sum(weights) + tail == 1 exactly.
BoltzmannWeights boltzmann_weights(const ChainConfig& config,
                                   const std::vector<ThermalMember>& members,
                                   int n_cut, double temperature,
                                   double tail_tolerance) {
  if (!(temperature > 0.0))
    throw std::domain_error("thermal weights: temperature must be > 0");

  BoltzmannWeights out;
  const double ground = members.front().energy;
  out.weights.reserve(members.size());
  double retained = 0.0;
  for (const auto& member : members) {
    const double w = std::exp(-(member.energy - ground) / temperature);
    out.weights.push_back(w);
    retained += w;
  }
  const double tail_abs = tail_weight_bound(config, n_cut, temperature, ground);
  out.partition_value = retained + tail_abs;
  out.tail = tail_abs / out.partition_value;
  for (double& w : out.weights) {
    w /= out.partition_value;
    if (w < kWeightCutoff) {
      out.tail += w;
      w = 0.0;
    }
  }

  if (out.tail > tail_tolerance) {
    const int full = config.twice_spin * config.bus_length;
    int suggested = full;
    for (int cut = n_cut + 1; cut <= full; ++cut) {
      if (tail_weight_bound(config, cut, temperature, ground) / out.partition_value <=
          0.5 * tail_tolerance) {
        suggested = cut;
        break;
      }
    }
    throw truncation_error(
        "thermal truncation tail " + std::to_string(out.tail) + " exceeds tolerance " +
            std::to_string(tail_tolerance) + "; retry with n_cut >= " +
            std::to_string(suggested),
        suggested);
  }
  return out;
}

}  // namespace

ThermalEnsemble bus_thermal_state(const ChainConfig& config, double temperature,
                                  int n_cut, double tail_tolerance) {
  ThermalEnsemble ensemble;
  ensemble.temperature = temperature;
  ensemble.members = bus_eigenpairs(config, n_cut);
  const BoltzmannWeights weights =
      boltzmann_weights(config, ensemble.members, n_cut, temperature, tail_tolerance);
  ensemble.partition_value = weights.partition_value;
  ensemble.truncation_tail = weights.tail;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i)
    ensemble.members[i].weight = weights.weights[i];
  std::erase_if(ensemble.members,
                [](const ThermalMember& member) { return member.weight == 0.0; });
  return ensemble;
}

namespace {

// Evolved qudit basis states with the bus prepared in one bus eigenvector:
// U(tau) (|mu>_s x |phi_i> x |0>_r), one chain sector mu + m each.
std::vector<GlobalPureState> evolved_member_basis(const ChainEngine& engine,
                                                  const ThermalMember& member,
                                                  double tau) {
  const ChainConfig& config = engine.config();
  const int m = member.bus_sector;
  const SectorBasis bus_basis(m, config.bus_length, config.twice_spin);

  std::vector<GlobalPureState> out;
  out.reserve(config.qudit_dim);
  for (int mu = 0; mu < config.qudit_dim; ++mu) {
    const SectorBasis& chain_basis = engine.basis(mu + m);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(chain_basis.size());
    OccupationVector occ(config.sites(), 0);
    occ[0] = mu;
    for (int b = 0; b < bus_basis.size(); ++b) {
      if (member.bus_vector(b) == 0.0) continue;
      const OccupationVector& bus_occ = bus_basis.state(b);
      std::copy(bus_occ.begin(), bus_occ.end(), occ.begin() + 1);
      amp(chain_basis.index_of(occ)) = member.bus_vector(b);
    }
    GlobalPureState state;
    state.config = config;
    state.sectors.emplace(mu + m, std::move(amp));
    out.push_back(engine.evolve(state, tau));
  }
  return out;
}

Eigen::MatrixXcd corrected_member_tensor(const ChainEngine& engine,
                                         const ThermalMember& member, double tau,
                                         const FidelityOptions& options) {
  const ChainConfig& config = engine.config();
  return apply_receiver_correction(
      receiver_cross_gram(evolved_member_basis(engine, member, tau), config.qudit_dim),
      receiver_correction(config, tau, options));
}

ChainConfig chain_config_for(const ChainConfig& config, int n_cut) {
  ChainConfig chain = config;
  chain.excitation_cap =
      std::min(n_cut + config.qudit_dim - 1, config.max_total_excitation());
  return chain;
}

}  // namespace

double thermal_average_fidelity(const ChainConfig& config, double temperature,
                                double tau, int n_cut, const ThermalMethod& method,
                                double tail_tolerance) {
  const ThermalEnsemble ensemble =
      bus_thermal_state(config, temperature, n_cut, tail_tolerance);
  const ChainEngine engine(chain_config_for(config, n_cut));

  std::vector<Eigen::MatrixXcd> tensors;
  tensors.reserve(ensemble.members.size());
  for (const auto& member : ensemble.members)
    tensors.push_back(corrected_member_tensor(engine, member, tau, {}));

  if (method.mc_samples == 0) {
    double avg = 0.0;
    for (std::size_t i = 0; i < tensors.size(); ++i)
      avg += ensemble.members[i].weight *
             haar_average_from_process_tensor(tensors[i], config.qudit_dim);
    return avg;
  }

  HaarSampler sampler(config.qudit_dim, method.seed);
  double sum = 0.0;
  for (int s = 0; s < method.mc_samples; ++s) {
    const QuditAmplitudes alpha = sampler.sample();
    double f = 0.0;
    for (std::size_t i = 0; i < tensors.size(); ++i)
      f += ensemble.members[i].weight * fidelity_from_process_tensor(tensors[i], alpha);
    sum += f;
  }
  return sum / method.mc_samples;
}

ThermalSweep::ThermalSweep(const ChainConfig& config, double tau, int n_cut,
                           const FidelityOptions& options)
    : config_(config), n_cut_(n_cut), members_(bus_eigenpairs(config, n_cut)) {
  const ChainEngine engine(chain_config_for(config, n_cut));
  fidelities_.reserve(members_.size());
  for (const auto& member : members_)
    fidelities_.push_back(haar_average_from_process_tensor(
        corrected_member_tensor(engine, member, tau, options), config.qudit_dim));
}

double ThermalSweep::average_at(double temperature, double tail_tolerance) const {
  const BoltzmannWeights weights =
      boltzmann_weights(config_, members_, n_cut_, temperature, tail_tolerance);
  double avg = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i)
    avg += weights.weights[i] * fidelities_[i];
  return avg;
}

}  // namespace spinbus
