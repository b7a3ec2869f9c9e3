#include "spinbus/basis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spinbus {

int total_occupation(const OccupationVector& v) {
  return std::accumulate(v.begin(), v.end(), 0);
}

SectorBasis::SectorBasis(int sector_n, int num_sites, int site_cap)
    : sector_n_(sector_n), num_sites_(num_sites), site_cap_(site_cap) {
  if (num_sites < 1) throw std::out_of_range("SectorBasis: num_sites must be >= 1");
  if (site_cap < 0) throw std::out_of_range("SectorBasis: site_cap must be >= 0");
  if (sector_n < 0 || sector_n > site_cap * num_sites)
    throw std::out_of_range("SectorBasis: sector " + std::to_string(sector_n) +
                            " outside [0, " + std::to_string(site_cap * num_sites) + "]");

  // Depth-first over sites, lowest occupation first: lexicographic order.
  OccupationVector current(num_sites, 0);
  auto fill = [&](auto&& self, int site, int remaining) -> void {
    if (site == num_sites - 1) {
      if (remaining <= site_cap) {
        current[site] = remaining;
        states_.push_back(current);
      }
      return;
    }
    const int sites_left = num_sites - site - 1;
    const int lo = std::max(0, remaining - site_cap * sites_left);
    const int hi = std::min(site_cap, remaining);
    for (int n = lo; n <= hi; ++n) {
      current[site] = n;
      self(self, site + 1, remaining - n);
    }
  };
  fill(fill, 0, sector_n);
}

std::optional<int> SectorBasis::try_index_of(const OccupationVector& v) const {
  if (static_cast<int>(v.size()) != num_sites_) return std::nullopt;
  auto it = std::lower_bound(states_.begin(), states_.end(), v);
  if (it == states_.end() || *it != v) return std::nullopt;
  return static_cast<int>(it - states_.begin());
}

int SectorBasis::index_of(const OccupationVector& v) const {
  auto idx = try_index_of(v);
  if (!idx)
    throw std::out_of_range("SectorBasis: occupation vector not in sector " +
                            std::to_string(sector_n_));
  return *idx;
}

SectorBasis enumerate_sector(const ChainConfig& config, int n) {
  config.validate();
  const int hard_cap = std::min(config.cap(), config.max_total_excitation());
  if (n < 0 || n > hard_cap)
    throw std::out_of_range("enumerate_sector: n = " + std::to_string(n) +
                            " outside [0, " + std::to_string(hard_cap) + "]");
  return SectorBasis(n, config.sites(), config.twice_spin);
}

long long sector_dimension(int num_sites, int site_cap, int sector_n) {
  if (sector_n < 0 || sector_n > site_cap * num_sites) return 0;
  // DP over sites; totals stay tiny so long long is ample.
  std::vector<long long> counts(sector_n + 1, 0);
  counts[0] = 1;
  for (int site = 0; site < num_sites; ++site) {
    std::vector<long long> next(sector_n + 1, 0);
    for (int t = 0; t <= sector_n; ++t) {
      if (counts[t] == 0) continue;
      for (int n = 0; n <= site_cap && t + n <= sector_n; ++n)
        next[t + n] += counts[t];
    }
    counts.swap(next);
  }
  return counts[sector_n];
}

double GlobalPureState::norm() const {
  double sq = 0.0;
  for (const auto& [n, amp] : sectors) sq += amp.squaredNorm();
  return std::sqrt(sq);
}

GlobalPureState product_state(const ChainConfig& config,
                              const OccupationVector& occupations) {
  config.validate();
  if (static_cast<int>(occupations.size()) != config.sites())
    throw std::domain_error("product_state: expected one occupation per site");
  for (int n : occupations)
    if (n < 0 || n > config.twice_spin)
      throw std::domain_error("product_state: site occupation outside [0, 2S]");
  const int total = total_occupation(occupations);
  if (total > config.cap())
    throw std::domain_error("product_state: total excitation above the configured cap");

  const SectorBasis basis = enumerate_sector(config, total);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.size());
  amp(basis.index_of(occupations)) = 1.0;
  return GlobalPureState{config, {{total, std::move(amp)}}};
}

}  // namespace spinbus
