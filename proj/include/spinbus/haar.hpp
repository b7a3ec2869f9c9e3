#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "spinbus/engine.hpp"
#include "spinbus/transfer.hpp"

namespace spinbus {

// Angle coordinates on the manifold of pure qudit states: d-1 azimuthal
// angles theta_p in [0, pi/2] and d-1 polar angles chi_p in [0, 2pi),
// p = 1..d-1 stored at index p-1. The uniform measure factorizes per pair
// with density proportional to cos(theta_p) sin(theta_p)^{2p-1}.
struct HurwitzAngles {
  Eigen::VectorXd thetas;
  Eigen::VectorXd chis;
};

// Components (cos t_{d-1}, sin t_{d-1} cos t_{d-2} e^{i chi_{d-1}}, ...,
// prod_p sin t_p e^{i chi_1}); unit norm by the telescoping identity.
// Throws std::domain_error on out-of-range angles.
QuditAmplitudes hurwitz_state(const HurwitzAngles& angles);

// Haar-uniform pure states by inverse-CDF sampling of each theta_p (the CDF
// of its density is sin^{2p}) and uniform chi_p. Deterministic per seed.
class HaarSampler {
 public:
  HaarSampler(int d, std::uint64_t seed);
  HurwitzAngles sample_angles();
  QuditAmplitudes sample();

 private:
  double uniform();  // in [0, 1), from the raw 64-bit stream
  int d_;
  std::mt19937_64 rng_;
};

QuditAmplitudes sample_haar(int d, std::uint64_t seed);

// E[alpha_a conj(alpha_b) alpha_c conj(alpha_e)] over Haar-random states:
// (delta_ab delta_ce + delta_ae delta_cb) / (d (d+1)).
double quartic_haar_moment(int d, int a, int b, int c, int e);

struct MonteCarloEstimate {
  double mean;
  double standard_error;
};

// Sample mean of the corrected fidelity over Haar draws.
MonteCarloEstimate average_fidelity_mc(const ChainEngine& engine, double tau,
                                       int n_samples, std::uint64_t seed,
                                       const FidelityOptions& options = {});
MonteCarloEstimate average_fidelity_mc(const ChainConfig& config, double tau,
                                       int n_samples, std::uint64_t seed,
                                       const FidelityOptions& options = {});

// Exact Haar average: evolve the d qudit basis states once, correct the
// channel's process tensor, contract with the quartic-moment tensor.
double average_fidelity_exact(const ChainEngine& engine, double tau,
                              const FidelityOptions& options = {});
double average_fidelity_exact(const ChainConfig& config, double tau,
                              const FidelityOptions& options = {});

// Process tensor of the corrected transfer channel: the cross-Gram of the d
// evolved qudit basis states with the receiver correction folded in, so
// rho_r(alpha)[n,n'] = sum_{mu,mu'} alpha_mu conj(alpha_mu') G[(mu,n),(mu',n')].
Eigen::MatrixXcd corrected_process_tensor(const ChainEngine& engine, double tau,
                                          const FidelityOptions& options = {});

// Fold a receiver correction into an uncorrected cross-Gram tensor.
Eigen::MatrixXcd apply_receiver_correction(const Eigen::MatrixXcd& tensor,
                                           const Eigen::VectorXcd& correction);

// F(alpha) as the beta-coefficient quartic form in the process tensor.
double fidelity_from_process_tensor(const Eigen::MatrixXcd& tensor,
                                    const QuditAmplitudes& alpha);

// The Haar-moment contraction of a corrected process tensor.
double haar_average_from_process_tensor(const Eigen::MatrixXcd& tensor, int d);

}  // namespace spinbus
