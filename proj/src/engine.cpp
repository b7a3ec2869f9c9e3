#include "spinbus/engine.hpp"

#include <stdexcept>
#include <string>

namespace spinbus {

ChainEngine::ChainEngine(const ChainConfig& config) : config_(config) {
  config_.validate();
  const int top = std::min(config_.cap(), config_.max_total_excitation());
  for (int n = 0; n <= top; ++n) {
    auto [it, inserted] = bases_.emplace(n, enumerate_sector(config_, n));
    const SectorBasis& basis = it->second;
    auto [bit, binserted] = blocks_.emplace(n, build_total_hamiltonian(config_, basis));
    spectra_.emplace(n, decompose(bit->second));
  }
}

const SectorBasis& ChainEngine::basis(int n) const {
  auto it = bases_.find(n);
  if (it == bases_.end())
    throw std::out_of_range("ChainEngine: sector " + std::to_string(n) + " not retained");
  return it->second;
}

const SectorOperator& ChainEngine::hamiltonian(int n) const {
  auto it = blocks_.find(n);
  if (it == blocks_.end())
    throw std::out_of_range("ChainEngine: sector " + std::to_string(n) + " not retained");
  return it->second;
}

GlobalPureState ChainEngine::evolve(const GlobalPureState& state, double tau) const {
  return spinbus::evolve(state, spectra_, tau);
}

std::vector<GlobalPureState> ChainEngine::evolved_qudit_basis(double tau) const {
  std::vector<GlobalPureState> out;
  out.reserve(config_.qudit_dim);
  for (int mu = 0; mu < config_.qudit_dim; ++mu) {
    OccupationVector occ(config_.sites(), 0);
    occ[0] = mu;
    out.push_back(evolve(product_state(config_, occ), tau));
  }
  return out;
}

}  // namespace spinbus
