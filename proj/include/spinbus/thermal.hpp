#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "spinbus/config.hpp"
#include "spinbus/transfer.hpp"

namespace spinbus {

// One retained eigenvector of the bare bus (XX + Zeeman over the N bus
// sites), expressed in the bus occupation basis of its excitation sector.
struct ThermalMember {
  double weight = 0.0;  // p_i = exp(-E_i/T) / Z
  double energy = 0.0;  // bus energy E_i, field included
  int bus_sector = 0;
  Eigen::VectorXd bus_vector;
};

// Boltzmann state of the data bus truncated at bus excitation n_cut.
// Z adds a rigorous upper bound on the neglected Boltzmann weight to the
// retained sum, so sum(p_i) + truncation_tail == 1 exactly and any thermal
// average of a [0,1] quantity carries a one-sided error of at most the tail.
struct ThermalEnsemble {
  double temperature = 0.0;
  double partition_value = 0.0;  // retained sum + tail bound, ground-shifted
  double truncation_tail = 0.0;
  std::vector<ThermalMember> members;  // descending weight
};

// Throws truncation_error (with a workable n_cut) when the tail bound
// exceeds tail_tolerance, and std::domain_error for T <= 0 or a bad n_cut.
// Members below weight 1e-12 are dropped into the tail.
ThermalEnsemble bus_thermal_state(const ChainConfig& config, double temperature,
                                  int n_cut, double tail_tolerance = 1e-8);

struct ThermalMethod {
  int mc_samples = 0;  // 0 selects the exact quartic-moment contraction
  std::uint64_t seed = 0;
};

// Haar-averaged transfer fidelity with the bus initially thermal:
// <F> = sum_i p_i <F | bus = phi_i>, each member evolved exactly in chain
// sectors up to (member excitation + d - 1).
double thermal_average_fidelity(const ChainConfig& config, double temperature,
                                double tau, int n_cut, const ThermalMethod& method = {},
                                double tail_tolerance = 1e-8);

// Member fidelities do not depend on temperature, so sweeps diagonalize and
// evolve once and only reweight per grid point.
class ThermalSweep {
 public:
  ThermalSweep(const ChainConfig& config, double tau, int n_cut,
               const FidelityOptions& options = {});

  // Exact Haar average of member i's transfer channel.
  const std::vector<double>& member_fidelities() const { return fidelities_; }
  double average_at(double temperature, double tail_tolerance = 1e-8) const;

 private:
  ChainConfig config_;
  int n_cut_;
  std::vector<ThermalMember> members_;  // energy-sorted, weightless
  std::vector<double> fidelities_;      // aligned with members_
};

}  // namespace spinbus
