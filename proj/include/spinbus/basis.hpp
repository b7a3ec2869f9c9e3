#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "spinbus/config.hpp"

namespace spinbus {

// Occupations n_i = S - m_i per site, 0 <= n_i <= 2S.
using OccupationVector = std::vector<int>;

int total_occupation(const OccupationVector& v);

// All occupation vectors over num_sites sites with per-site cap site_cap and
// fixed total sector_n, enumerated in lexicographic order. The order (and so
// every amplitude index downstream) is reproducible by construction.
class SectorBasis {
 public:
  SectorBasis(int sector_n, int num_sites, int site_cap);

  int sector() const { return sector_n_; }
  int num_sites() const { return num_sites_; }
  int site_cap() const { return site_cap_; }
  int size() const { return static_cast<int>(states_.size()); }
  const OccupationVector& state(int i) const { return states_[i]; }
  const std::vector<OccupationVector>& states() const { return states_; }

  // Position of v in the enumeration; throws std::out_of_range if v is not a
  // member (wrong total, cap violation, wrong length).
  int index_of(const OccupationVector& v) const;
  std::optional<int> try_index_of(const OccupationVector& v) const;

 private:
  int sector_n_;
  int num_sites_;
  int site_cap_;
  std::vector<OccupationVector> states_;
};

// Basis of the chain's excitation sector n (sites = N+2, cap = 2S).
// Throws std::out_of_range when n is outside [0, min(n_max, 2S*(N+2))].
SectorBasis enumerate_sector(const ChainConfig& config, int n);

// Number of capped occupation vectors with the given total, without
// enumerating them.
long long sector_dimension(int num_sites, int site_cap, int sector_n);

// Pure state of the full chain stored as a direct sum of per-sector
// amplitude vectors, each aligned with that sector's SectorBasis order.
struct GlobalPureState {
  ChainConfig config;
  std::map<int, Eigen::VectorXcd> sectors;

  double norm() const;
};

// Unit-norm product state |n_s n_1 ... n_N n_r>. Throws std::domain_error on
// a cap violation or a total above the configured excitation cap.
GlobalPureState product_state(const ChainConfig& config,
                              const OccupationVector& occupations);

}  // namespace spinbus
