#pragma once

#include <Eigen/Dense>

#include "spinbus/config.hpp"

namespace spinbus {

// Bus eigenmode energies eps_k = -4SJ cos(k pi / (N+1)) and register-mode
// couplings t_k = -(2Sg/A) sin(k pi / (N+1)), A = sqrt((N+1)/2), k = 1..N
// (stored at index k-1).
struct ModeSpectrum {
  Eigen::VectorXd energies;
  Eigen::VectorXd couplings;
};

ModeSpectrum mode_spectrum(const ChainConfig& config);

// Index kappa = (N+1)/2 of the zero-energy mode the registers couple to
// resonantly. Throws unsupported_configuration for even N (no zero mode).
int zero_mode_index(const ChainConfig& config);

// tau0 = pi / (sqrt(2) |t_kappa|), the time at which the effective dynamics
// completes the sender -> receiver swap. Odd N only.
double optimal_time(const ChainConfig& config);

// Diagonal entries (-1)^{mu kappa}, mu = 0..d-1, of the phase gate that
// removes the length-dependent swap phase. Involutive.
Eigen::VectorXd phase_gate(int kappa, int d);

// One-excitation evolution under the resonant effective Hamiltonian, on the
// (sender mode, kappa mode, receiver mode) amplitudes. Odd N only.
Eigen::Matrix3cd effective_evolution(const ChainConfig& config, double tau);

// Everything the closed-form model predicts for one configuration.
struct EffectivePrediction {
  int kappa;
  double t_kappa;
  double tau0;
  Eigen::VectorXd mode_energies;
  Eigen::VectorXd mode_couplings;
  int swap_phase_exponent;  // per-excitation swap phase is (-1)^kappa
};

EffectivePrediction effective_prediction(const ChainConfig& config);

}  // namespace spinbus
