#include "spinbus/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinbus {

namespace {

void fix_eigenvector_signs(Eigen::MatrixXd& vectors) {
  for (int c = 0; c < vectors.cols(); ++c) {
    int imax = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

}  // namespace

SectorSpectrum decompose(const SectorOperator& op) {
  const Eigen::MatrixXd h = op.dense();
  const double scale = std::max(op.max_abs_coeff(), 1.0);
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("decompose: operator is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::invalid_argument("decompose: eigensolver failed for sector " +
                                std::to_string(op.sector()));

  SectorSpectrum spec;
  spec.sector_n = op.sector();
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  fix_eigenvector_signs(spec.eigenvectors);

  const double err = (spec.eigenvectors * spec.eigenvalues.asDiagonal() *
                          spec.eigenvectors.transpose() -
                      h)
                         .cwiseAbs()
                         .maxCoeff();
  if (err > 1e-10 * scale)
    throw std::invalid_argument("decompose: reconstruction error " + std::to_string(err) +
                                " exceeds tolerance");
  return spec;
}

GlobalPureState evolve(const GlobalPureState& state, const SpectrumMap& spectra,
                       double tau) {
  using namespace std::complex_literals;
  GlobalPureState out;
  out.config = state.config;
  for (const auto& [n, amp] : state.sectors) {
    auto it = spectra.find(n);
    if (it == spectra.end())
      throw std::invalid_argument("evolve: no spectrum for sector " + std::to_string(n));
    const SectorSpectrum& s = it->second;
    if (s.eigenvalues.size() != amp.size())
      throw std::invalid_argument("evolve: spectrum/state dimension mismatch in sector " +
                                  std::to_string(n));
    const Eigen::VectorXcd modes = s.eigenvectors.transpose().cast<std::complex<double>>() * amp;
    const Eigen::VectorXcd phases =
        (-1i * tau * s.eigenvalues.cast<std::complex<double>>().array()).exp();
    out.sectors[n] =
        s.eigenvectors.cast<std::complex<double>>() * (phases.array() * modes.array()).matrix();
  }
  return out;
}

StateEnsemble evolve_density(const StateEnsemble& ensemble, const SpectrumMap& spectra,
                             double tau) {
  double total = 0.0;
  for (const auto& member : ensemble) total += member.weight;
  if (std::abs(total - 1.0) > 1e-10)
    throw std::domain_error("evolve_density: weights sum to " + std::to_string(total));

  StateEnsemble out;
  out.reserve(ensemble.size());
  for (const auto& member : ensemble)
    out.push_back({member.weight, evolve(member.state, spectra, tau)});
  return out;
}

}  // namespace spinbus
