#include "spinbus/effective.hpp"

#include <cmath>
#include <numbers>

#include "spinbus/errors.hpp"

namespace spinbus {

namespace {
constexpr double kPi = std::numbers::pi;
}

ModeSpectrum mode_spectrum(const ChainConfig& config) {
  config.validate();
  const int n = config.bus_length;
  const double norm = std::sqrt((n + 1) / 2.0);
  ModeSpectrum modes;
  modes.energies.resize(n);
  modes.couplings.resize(n);
  for (int k = 1; k <= n; ++k) {
    const double arg = k * kPi / (n + 1);
    modes.energies(k - 1) = -2.0 * config.twice_spin * config.coupling_j * std::cos(arg);
    modes.couplings(k - 1) =
        -config.twice_spin * config.coupling_g / norm * std::sin(arg);
  }
  // The band center is an exact zero for odd N; pin it against rounding.
  if (n % 2 == 1) modes.energies((n + 1) / 2 - 1) = 0.0;
  return modes;
}

int zero_mode_index(const ChainConfig& config) {
  config.validate();
  if (config.bus_length % 2 == 0)
    throw unsupported_configuration(
        "no zero-energy bus mode exists for even N = " +
        std::to_string(config.bus_length) + "; pick an odd bus length or supply a time");
  return (config.bus_length + 1) / 2;
}

double optimal_time(const ChainConfig& config) {
  const int kappa = zero_mode_index(config);
  if (config.coupling_g <= 0.0)
    throw unsupported_configuration("optimal time is undefined at g = 0");
  const double t_kappa = mode_spectrum(config).couplings(kappa - 1);
  return kPi / (std::sqrt(2.0) * std::abs(t_kappa));
}

Eigen::VectorXd phase_gate(int kappa, int d) {
  Eigen::VectorXd diag(d);
  for (int mu = 0; mu < d; ++mu) diag(mu) = (mu * kappa) % 2 == 0 ? 1.0 : -1.0;
  return diag;
}

Eigen::Matrix3cd effective_evolution(const ChainConfig& config, double tau) {
  const int kappa = zero_mode_index(config);
  const double t_kappa = mode_spectrum(config).couplings(kappa - 1);
  const double sign = kappa % 2 == 1 ? 1.0 : -1.0;  // (-1)^(kappa-1)

  Eigen::Matrix3d h;
  h << 0.0, t_kappa, 0.0,                //
      t_kappa, 0.0, sign * t_kappa,      //
      0.0, sign * t_kappa, 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(h);
  const Eigen::Vector3cd phases =
      (std::complex<double>(0.0, -tau) * solver.eigenvalues().cast<std::complex<double>>().array())
          .exp();
  const Eigen::Matrix3cd v = solver.eigenvectors().cast<std::complex<double>>();
  return v * phases.asDiagonal() * v.adjoint();
}

EffectivePrediction effective_prediction(const ChainConfig& config) {
  const int kappa = zero_mode_index(config);
  ModeSpectrum modes = mode_spectrum(config);
  EffectivePrediction p;
  p.kappa = kappa;
  p.t_kappa = modes.couplings(kappa - 1);
  p.tau0 = optimal_time(config);
  p.mode_energies = std::move(modes.energies);
  p.mode_couplings = std::move(modes.couplings);
  p.swap_phase_exponent = kappa;
  return p;
}

}  // namespace spinbus
