#pragma once

#include <map>
#include <vector>

#include "spinbus/basis.hpp"
#include "spinbus/config.hpp"
#include "spinbus/hamiltonian.hpp"
#include "spinbus/propagator.hpp"

namespace spinbus {

// Bases, Hamiltonian blocks and spectra for every retained sector of one
// configuration, built once and shared by transfer, averaging, entanglement
// and thermal sweeps. Immutable after construction.
class ChainEngine {
 public:
  explicit ChainEngine(const ChainConfig& config);

  const ChainConfig& config() const { return config_; }
  const SectorBasis& basis(int n) const;
  const SectorOperator& hamiltonian(int n) const;
  const SpectrumMap& spectra() const { return spectra_; }

  GlobalPureState evolve(const GlobalPureState& state, double tau) const;

  // U(tau) |mu, 0...0, 0> for mu = 0..d-1: the evolved qudit basis states
  // every fidelity and entanglement quantity is assembled from.
  std::vector<GlobalPureState> evolved_qudit_basis(double tau) const;

 private:
  ChainConfig config_;
  std::map<int, SectorBasis> bases_;
  std::map<int, SectorOperator> blocks_;
  SpectrumMap spectra_;
};

}  // namespace spinbus
