#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinbus/config.hpp"
#include "spinbus/engine.hpp"
#include "spinbus/transfer.hpp"

namespace spinbus {

// Bipartite density matrix over parties (1, 2) with index i1 * dim2 + j2.
struct BipartiteDensity {
  Eigen::MatrixXcd rho;
  int dim1 = 0;
  int dim2 = 0;

  void validate() const;  // Hermitian, unit trace, PSD within 1e-10
};

// Composite state of figure 1(b): register a is an inert d-level ancilla
// kept outside the chain; branch mu is the chain component paired with
// |mu>_a and carries the 1/sqrt(d) weight, so the branch norms sum to 1.
struct EntangledState {
  int dim = 0;
  std::vector<GlobalPureState> branches;

  double norm() const;
  // rho_a[mu, mu'] = <branch_mu' | branch_mu>; maximally mixed at all times.
  Eigen::MatrixXcd register_density() const;
};

// (1/sqrt(d)) sum_mu |mu>_a |mu>_b |0...0>.
EntangledState entangled_initial(const ChainConfig& config);

// <i1 j2| rho^{T1} |k1 l2> = <k1 j2| rho |i1 l2> (and the mirrored rule for
// party 2). Involutive; Hermitian but possibly non-PSD.
Eigen::MatrixXcd partial_transpose(const BipartiteDensity& rho, int party);

// log2 || rho^{T1} ||_1 with ||O||_1 = 1 + 2 |sum of negative eigenvalues|.
// Eigenvalues above -1e-12 count as nonnegative, so PPT states give exactly 0.
double log_negativity(const BipartiteDensity& rho);

// rho_ac: trace out register b and the bus, keep (a, c).
BipartiteDensity reduce_to_register_pair(const EntangledState& state);

// E = LE_ac(tau) / LE_ab = LE_ac / log2(d). The optional kappa-phase
// correction on c is a local unitary and cannot change the value; it exists
// so reported states match the corrected transfer convention. Clamped to 1.
double distribution_efficiency(const ChainEngine& engine, double tau,
                               bool apply_phase_gate = true);
double distribution_efficiency(const ChainConfig& config, double tau,
                               bool apply_phase_gate = true);

}  // namespace spinbus
