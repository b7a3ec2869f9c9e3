#include "spinbus/haar.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace spinbus {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

QuditAmplitudes hurwitz_state(const HurwitzAngles& angles) {
  using namespace std::complex_literals;
  const int d = static_cast<int>(angles.thetas.size()) + 1;
  if (d < 2 || angles.chis.size() != d - 1)
    throw std::domain_error("hurwitz_state: need d-1 thetas and d-1 chis");
  for (int p = 0; p < d - 1; ++p) {
    if (angles.thetas(p) < 0.0 || angles.thetas(p) > kPi / 2.0)
      throw std::domain_error("hurwitz_state: theta outside [0, pi/2]");
    if (angles.chis(p) < 0.0 || angles.chis(p) >= kTwoPi)
      throw std::domain_error("hurwitz_state: chi outside [0, 2pi)");
  }

  // Component j carries p = d-1-j cosine factors consumed from the top of
  // the theta list and the phase chi_{d-j}; the last component keeps only
  // sines and chi_1.
  Eigen::VectorXcd alpha(d);
  double sines = 1.0;
  for (int j = 0; j < d - 1; ++j) {
    const double theta = angles.thetas(d - 2 - j);  // theta_{d-1-j}
    const std::complex<double> phase =
        j == 0 ? 1.0 : std::exp(1i * angles.chis(d - 1 - j));  // chi_{d-j}
    alpha(j) = sines * std::cos(theta) * phase;
    sines *= std::sin(theta);
  }
  alpha(d - 1) = sines * std::exp(1i * angles.chis(0));
  return {std::move(alpha)};
}

HaarSampler::HaarSampler(int d, std::uint64_t seed) : d_(d), rng_(seed) {
  if (d < 2) throw std::domain_error("HaarSampler: d must be >= 2");
}

double HaarSampler::uniform() {
  // Top 53 bits -> [0, 1); keeps the stream implementation-independent.
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

HurwitzAngles HaarSampler::sample_angles() {
  HurwitzAngles angles;
  angles.thetas.resize(d_ - 1);
  angles.chis.resize(d_ - 1);
  for (int p = 1; p <= d_ - 1; ++p) {
    // CDF of cos(t) sin(t)^{2p-1} (normalized) is sin(t)^{2p}.
    const double u = uniform();
    angles.thetas(p - 1) = std::asin(std::pow(u, 1.0 / (2.0 * p)));
    angles.chis(p - 1) = kTwoPi * uniform();
  }
  return angles;
}

QuditAmplitudes HaarSampler::sample() { return hurwitz_state(sample_angles()); }

QuditAmplitudes sample_haar(int d, std::uint64_t seed) {
  return HaarSampler(d, seed).sample();
}

double quartic_haar_moment(int d, int a, int b, int c, int e) {
  const double pairings = (a == b && c == e ? 1.0 : 0.0) + (a == e && c == b ? 1.0 : 0.0);
  return pairings / (static_cast<double>(d) * (d + 1));
}

MonteCarloEstimate average_fidelity_mc(const ChainEngine& engine, double tau,
                                       int n_samples, std::uint64_t seed,
                                       const FidelityOptions& options) {
  if (n_samples < 100)
    throw std::domain_error("average_fidelity_mc: need at least 100 samples");
  HaarSampler sampler(engine.config().qudit_dim, seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double f = corrected_fidelity(engine, sampler.sample(), tau, options);
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, (sum_sq - n_samples * mean * mean) / (n_samples - 1));
  return {mean, std::sqrt(var / n_samples)};
}

MonteCarloEstimate average_fidelity_mc(const ChainConfig& config, double tau,
                                       int n_samples, std::uint64_t seed,
                                       const FidelityOptions& options) {
  return average_fidelity_mc(ChainEngine(config), tau, n_samples, seed, options);
}

Eigen::MatrixXcd apply_receiver_correction(const Eigen::MatrixXcd& tensor,
                                           const Eigen::VectorXcd& correction) {
  const int d = static_cast<int>(correction.size());
  const int states = static_cast<int>(tensor.rows()) / d;
  if (tensor.rows() != states * d || tensor.rows() != tensor.cols())
    throw std::invalid_argument("apply_receiver_correction: tensor/correction mismatch");
  Eigen::VectorXcd full(tensor.rows());
  for (int a = 0; a < states; ++a)
    for (int n = 0; n < d; ++n) full(a * d + n) = correction(n);
  return full.asDiagonal() * tensor * full.conjugate().asDiagonal();
}

double fidelity_from_process_tensor(const Eigen::MatrixXcd& tensor,
                                    const QuditAmplitudes& alpha) {
  const int d = alpha.dim();
  if (tensor.rows() != d * d || tensor.cols() != d * d)
    throw std::invalid_argument("fidelity_from_process_tensor: expected a d^2 x d^2 tensor");
  std::complex<double> f = 0.0;
  for (int mu = 0; mu < d; ++mu)
    for (int mup = 0; mup < d; ++mup)
      for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np)
          f += tensor(mu * d + n, mup * d + np) * alpha.alpha(mu) *
               std::conj(alpha.alpha(mup)) * std::conj(alpha.alpha(n)) * alpha.alpha(np);
  return std::real(f);
}

double haar_average_from_process_tensor(const Eigen::MatrixXcd& tensor, int d) {
  if (tensor.rows() != d * d || tensor.cols() != d * d)
    throw std::invalid_argument("haar_average_from_process_tensor: expected a d^2 x d^2 tensor");
  // F(alpha) = sum G[(mu,n),(mu',n')] alpha_mu conj(alpha_mu') alpha_n' conj(alpha_n).
  std::complex<double> avg = 0.0;
  for (int mu = 0; mu < d; ++mu)
    for (int mup = 0; mup < d; ++mup)
      for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np)
          avg += tensor(mu * d + n, mup * d + np) * quartic_haar_moment(d, mu, mup, np, n);
  return std::real(avg);
}

Eigen::MatrixXcd corrected_process_tensor(const ChainEngine& engine, double tau,
                                          const FidelityOptions& options) {
  const ChainConfig& config = engine.config();
  const int d = config.qudit_dim;
  return apply_receiver_correction(
      receiver_cross_gram(engine.evolved_qudit_basis(tau), d),
      receiver_correction(config, tau, options));
}

double average_fidelity_exact(const ChainEngine& engine, double tau,
                              const FidelityOptions& options) {
  return haar_average_from_process_tensor(corrected_process_tensor(engine, tau, options),
                                          engine.config().qudit_dim);
}

double average_fidelity_exact(const ChainConfig& config, double tau,
                              const FidelityOptions& options) {
  return average_fidelity_exact(ChainEngine(config), tau, options);
}

}  // namespace spinbus
