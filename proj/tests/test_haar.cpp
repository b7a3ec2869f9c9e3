#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinbus/effective.hpp"
#include "spinbus/engine.hpp"
#include "spinbus/haar.hpp"

using namespace spinbus;

namespace {

ChainConfig make_config(int bus, int twice_spin, int dim, double g, double h = 0.0) {
  ChainConfig c;
  c.bus_length = bus;
  c.twice_spin = twice_spin;
  c.qudit_dim = dim;
  c.coupling_g = g;
  c.field_h = h;
  return c;
}

}  // namespace

TEST_CASE("hurwitz parametrization") {
  SUBCASE("all thetas zero gives the first basis vector") {
    HurwitzAngles angles{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)};
    const QuditAmplitudes state = hurwitz_state(angles);
    CHECK(std::abs(state.alpha(0) - 1.0) <= 1e-15);
    CHECK(state.alpha.tail(3).cwiseAbs().maxCoeff() <= 1e-15);
  }

  SUBCASE("qubit equator") {
    HurwitzAngles angles{Eigen::VectorXd::Constant(1, std::numbers::pi / 4.0),
                         Eigen::VectorXd::Zero(1)};
    const QuditAmplitudes state = hurwitz_state(angles);
    CHECK(std::abs(state.alpha(0) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(state.alpha(1) - 1.0 / std::sqrt(2.0)) <= 1e-15);
  }

  SUBCASE("unit norm for arbitrary angles") {
    HaarSampler sampler(5, 99);
    for (int i = 0; i < 200; ++i) {
      const HurwitzAngles angles = sampler.sample_angles();
      CHECK(hurwitz_state(angles).alpha.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("range violations") {
    HurwitzAngles bad_theta{Eigen::VectorXd::Constant(1, 2.0), Eigen::VectorXd::Zero(1)};
    CHECK_THROWS_AS(hurwitz_state(bad_theta), std::domain_error);
    HurwitzAngles bad_chi{Eigen::VectorXd::Zero(1),
                          Eigen::VectorXd::Constant(1, 2.0 * std::numbers::pi)};
    CHECK_THROWS_AS(hurwitz_state(bad_chi), std::domain_error);
    HurwitzAngles mismatched{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1)};
    CHECK_THROWS_AS(hurwitz_state(mismatched), std::domain_error);
  }
}

TEST_CASE("per-angle measure integrates to pi/p") {
  // Simpson quadrature of cos(t) sin(t)^{2p-1} over [0, pi/2], times 2 pi.
  for (int p = 1; p <= 4; ++p) {
    const int panels = 4000;
    const double h = std::numbers::pi / 2.0 / panels;
    auto density = [p](double t) {
      return std::cos(t) * std::pow(std::sin(t), 2 * p - 1);
    };
    double integral = density(0.0) + density(std::numbers::pi / 2.0);
    for (int i = 1; i < panels; ++i)
      integral += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    integral *= h / 3.0 * 2.0 * std::numbers::pi;
    CHECK(std::abs(integral - std::numbers::pi / p) <= 1e-8);
  }
}

TEST_CASE("sampled moments match the Haar values") {
  const int d = 3;
  const int samples = 100000;
  HaarSampler sampler(d, 2024);
  double mean_sq = 0.0, mean_quartic = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double p0 = std::norm(sampler.sample().alpha(0));
    mean_sq += p0;
    mean_quartic += p0 * p0;
  }
  mean_sq /= samples;
  mean_quartic /= samples;

  // Population variances: var(|a0|^2) = 1/18, var(|a0|^4) = 7/180 at d = 3.
  const double sigma_sq = std::sqrt(1.0 / 18.0 / samples);
  const double sigma_quartic = std::sqrt(7.0 / 180.0 / samples);
  CHECK(std::abs(mean_sq - 1.0 / 3.0) <= 3.0 * sigma_sq);
  CHECK(std::abs(mean_quartic - 1.0 / 6.0) <= 3.0 * sigma_quartic);
}

TEST_CASE("seed determinism") {
  HaarSampler a(4, 31337), b(4, 31337);
  for (int i = 0; i < 50; ++i)
    CHECK((a.sample().alpha - b.sample().alpha).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sample_haar(4, 1).alpha - sample_haar(4, 2).alpha).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("quartic moment tensor identities") {
  for (int d : {2, 3, 4}) {
    CHECK(quartic_haar_moment(d, 0, 0, 0, 0) ==
          doctest::Approx(2.0 / (d * (d + 1.0))).epsilon(1e-15));

    // Normalization: E[(sum |alpha_a|^2)^2] = 1.
    double norm = 0.0;
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) norm += quartic_haar_moment(d, a, a, c, c);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-15));

    // Two-design trace identity: sum_a E[|alpha_a|^4] * d(d+1)/2 = d.
    double diag = 0.0;
    for (int a = 0; a < d; ++a) diag += quartic_haar_moment(d, a, a, a, a);
    CHECK(diag * d * (d + 1.0) / 2.0 == doctest::Approx(d).epsilon(1e-15));
  }
}

TEST_CASE("decoupled registers average to 1/d") {
  const ChainConfig c = make_config(1, 4, 3, 0.0);
  const ChainEngine engine(c);

  CHECK(average_fidelity_exact(engine, 2.3) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const MonteCarloEstimate mc = average_fidelity_mc(engine, 2.3, 4000, 7);
  CHECK(std::abs(mc.mean - 1.0 / 3.0) <= 3.0 * mc.standard_error);
}

TEST_CASE("monte carlo estimator is unbiased over many seeds") {
  const ChainConfig c = make_config(1, 4, 3, 0.0);
  const ChainEngine engine(c);
  int covered = 0;
  const int trials = 50;
  for (int seed = 0; seed < trials; ++seed) {
    const MonteCarloEstimate mc = average_fidelity_mc(engine, 1.1, 1000, 5000 + seed);
    if (std::abs(mc.mean - 1.0 / 3.0) <= 3.0 * mc.standard_error) ++covered;
  }
  CHECK(covered >= 47);  // 3-sigma coverage is 99.7%
}

TEST_CASE("monte carlo agrees with the exact contraction") {
  struct Point {
    ChainConfig config;
    double tau;
  };
  const Point points[] = {
      {make_config(3, 20, 3, 0.1), 0.0},
      {make_config(3, 20, 3, 0.1), std::numbers::pi / 2.0},
      {make_config(1, 6, 4, 0.3, 0.2), 1.9},
      {make_config(3, 8, 2, 0.6), 2.7},
  };
  for (const auto& [config, tau] : points) {
    const ChainEngine engine(config);
    const double exact = average_fidelity_exact(engine, tau);
    const MonteCarloEstimate mc = average_fidelity_mc(engine, tau, 4000, 99);
    // A tiny floor keeps the check meaningful when the variance vanishes.
    CHECK(std::abs(mc.mean - exact) <= 3.0 * mc.standard_error + 1e-12);
  }
}

TEST_CASE("perfect channel averages to exactly 1") {
  // Qubit through a single-site bus: the swap is exact, so F(alpha) = 1.
  const ChainConfig c = make_config(1, 5, 2, 0.21);
  const ChainEngine engine(c);
  const double tau0 = optimal_time(c);
  CHECK(average_fidelity_exact(engine, tau0) == doctest::Approx(1.0).epsilon(1e-12));
  const MonteCarloEstimate mc = average_fidelity_mc(engine, tau0, 500, 3);
  CHECK(mc.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mc.standard_error <= 1e-12);
}

TEST_CASE("sample count is validated") {
  const ChainEngine engine(make_config(1, 4, 3, 0.1));
  CHECK_THROWS_AS(average_fidelity_mc(engine, 1.0, 99, 1), std::domain_error);
}
