#pragma once

// Independent reference constructions the fast paths are checked against.
// Everything here deliberately avoids the sector machinery: operators are
// assembled site by site in the full (2S+1)^sites product space and states
// are scattered into flat vectors, so agreement is a real cross-check.

#include <Eigen/Dense>

#include "spinbus/basis.hpp"
#include "spinbus/config.hpp"

namespace spinbus::oracle {

// Single-site ladder/Sz matrices in the occupation basis n = 0..2S.
Eigen::MatrixXd site_raise(int twice_spin);   // S+
Eigen::MatrixXd site_lower(int twice_spin);   // S-
Eigen::MatrixXd site_sz(int twice_spin);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Operator acting on one site of the chain, identity elsewhere.
Eigen::MatrixXd embed(const Eigen::MatrixXd& op, int site, int num_sites, int twice_spin);

// Full-space H_B, H_I, H_M, H of the chain (sender, bus 1..N, receiver).
Eigen::MatrixXd full_bus_hamiltonian(const ChainConfig& config);
Eigen::MatrixXd full_interaction_hamiltonian(const ChainConfig& config);
Eigen::MatrixXd full_zeeman_hamiltonian(const ChainConfig& config);
Eigen::MatrixXd full_total_hamiltonian(const ChainConfig& config);

// Flat index of an occupation vector in the product space (site 0 most
// significant), and the inverse.
long long flat_index(const OccupationVector& occ, int twice_spin);
OccupationVector unflatten(long long index, int num_sites, int twice_spin);

// Scatter a sector-decomposed state into the flat product-space vector.
Eigen::VectorXcd flatten_state(const GlobalPureState& state);

// Dense partial trace keeping only the last site, truncated to keep_dim levels.
Eigen::MatrixXcd dense_receiver_trace(const Eigen::VectorXcd& psi, int num_sites,
                                      int twice_spin, int keep_dim);

// exp(-i H tau) psi by Pade scaling-and-squaring (not spectral).
Eigen::VectorXcd expm_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi,
                             double tau);

}  // namespace spinbus::oracle
