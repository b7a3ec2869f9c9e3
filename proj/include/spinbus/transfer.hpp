#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinbus/basis.hpp"
#include "spinbus/config.hpp"
#include "spinbus/engine.hpp"
#include "spinbus/propagator.hpp"

namespace spinbus {

// Qudit amplitudes alpha_0..alpha_{d-1}, unit norm.
struct QuditAmplitudes {
  Eigen::VectorXcd alpha;

  int dim() const { return static_cast<int>(alpha.size()); }
  // Throws std::domain_error unless the norm is 1 within 1e-12.
  void validate() const;

  static QuditAmplitudes uniform(int d);
  static QuditAmplitudes basis_state(int d, int mu);
  // Normalizes arbitrary coefficients (throws on the zero vector).
  static QuditAmplitudes normalized(Eigen::VectorXcd coefficients);
};

// Receiver (or register-pair) density matrix.
struct QuditDensity {
  Eigen::MatrixXcd rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  double fidelity_with(const QuditAmplitudes& target) const;
  // Hermiticity/positivity within 1e-10; unit trace unless the caller opts
  // out (a truncated receiver block of a thermal run carries trace < 1).
  void validate(bool require_unit_trace = true) const;
};

// |psi(0)> = sum_mu alpha_mu |mu>_s |0...0>: amplitude alpha_mu sits on the
// occupation vector (mu, 0, ..., 0) of sector mu.
GlobalPureState initial_transfer_state(const ChainConfig& config,
                                       const QuditAmplitudes& alpha);

// Cross-Gram of several states over every configuration of the non-receiver
// sites: G[(a,n),(b,n')] = sum_rest psi_a(rest, n) conj(psi_b(rest, n')),
// flattened as a*keep_dim + n. With one state this is the receiver density
// matrix; with the d evolved qudit basis states it is the transfer channel's
// process tensor.
Eigen::MatrixXcd receiver_cross_gram(const std::vector<GlobalPureState>& states,
                                     int keep_dim);

QuditDensity reduce_to_receiver(const GlobalPureState& state, int receiver_dim);
QuditDensity reduce_to_receiver(const StateEnsemble& ensemble, int receiver_dim);

struct FidelityOptions {
  bool apply_phase_gate = true;   // undo the (-1)^{mu kappa} swap phase
  bool apply_field_phase = true;  // undo the e^{-i h mu tau} Zeeman phase
};

// Diagonal receiver correction diag((-1)^{n kappa} e^{+i h n tau}).
// Throws unsupported_configuration when the phase gate is requested on an
// even-length bus.
Eigen::VectorXcd receiver_correction(const ChainConfig& config, double tau,
                                     const FidelityOptions& options);

// F(tau) = <phi| D rho_r(tau) D^dag |phi> with D the correction above.
double corrected_fidelity(const ChainEngine& engine, const QuditAmplitudes& alpha,
                          double tau, const FidelityOptions& options = {});
double corrected_fidelity(const ChainConfig& config, const QuditAmplitudes& alpha,
                          double tau, const FidelityOptions& options = {});

}  // namespace spinbus
