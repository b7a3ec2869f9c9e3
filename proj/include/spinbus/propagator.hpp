#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "spinbus/basis.hpp"
#include "spinbus/hamiltonian.hpp"

namespace spinbus {

// Full spectral decomposition of one Hermitian sector block:
// H = V diag(E) V^T with eigenvalues ascending and each eigenvector's
// largest-magnitude component made positive (deterministic signs).
struct SectorSpectrum {
  int sector_n = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // orthogonal, one eigenvector per column
};

using SpectrumMap = std::map<int, SectorSpectrum>;

// Throws std::invalid_argument if the operator is not symmetric to 1e-12
// (relative to its largest entry) or if the decomposition fails to
// reconstruct the input within 1e-10 * max|H|.
SectorSpectrum decompose(const SectorOperator& op);

// psi(tau) = V exp(-i E tau) V^T psi, per sector. Time is in units of 1/J.
// Throws std::invalid_argument when a populated sector has no spectrum.
GlobalPureState evolve(const GlobalPureState& state, const SpectrumMap& spectra,
                       double tau);

struct WeightedState {
  double weight;
  GlobalPureState state;
};

// Mixed state as a weighted pure-state ensemble.
using StateEnsemble = std::vector<WeightedState>;

// Evolves every member coherently; weights are untouched. Throws
// std::domain_error unless the weights sum to 1 within 1e-10.
StateEnsemble evolve_density(const StateEnsemble& ensemble, const SpectrumMap& spectra,
                             double tau);

}  // namespace spinbus
