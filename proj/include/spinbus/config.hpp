#pragma once

namespace spinbus {

// Parameters of one chain run. Sites are ordered (sender, bus 1..N,
// receiver); energies are in units of the bus coupling J, time in 1/J,
// and hbar = k_B = 1.
//
// The spin is stored as the integer 2S so half-integer spins stay exact;
// all ladder coefficients are computed from twice_spin directly.
struct ChainConfig {
  int bus_length = 1;       // N >= 1
  int twice_spin = 1;       // 2S >= 1
  int qudit_dim = 2;        // d >= 2 and d <= 2S+1
  double coupling_j = 1.0;  // J > 0, bus-bus coupling (the energy scale)
  double coupling_g = 0.1;  // g >= 0, register-bus coupling
  double field_h = 0.0;     // h >= 0, Zeeman field
  int excitation_cap = -1;  // retained total excitation; -1 means d-1

  int sites() const { return bus_length + 2; }
  double spin() const { return 0.5 * twice_spin; }
  int cap() const { return excitation_cap >= 0 ? excitation_cap : qudit_dim - 1; }
  int max_total_excitation() const { return twice_spin * sites(); }

  // The protocol's working regime is d much smaller than 2S; callers may
  // want to warn outside it.
  bool qudit_exceeds_spin() const { return 2 * qudit_dim > twice_spin; }

  // Throws std::invalid_argument listing every violated constraint.
  void validate() const;
};

}  // namespace spinbus
