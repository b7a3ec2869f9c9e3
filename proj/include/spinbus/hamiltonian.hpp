#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "spinbus/basis.hpp"
#include "spinbus/config.hpp"

namespace spinbus {

// Which spin ladder operator acts. Raise is S+ (occupation n -> n-1 since
// n counts excitations below full polarization), Lower is S- (n -> n+1).
enum class Ladder { Raise, Lower };

// Exact Holstein-Primakoff matrix element magnitude:
//   S+|n> = sqrt(n(2S-n+1)) |n-1>,   S-|n> = sqrt((n+1)(2S-n)) |n+1>.
// Exactly 0 at the boundaries; throws std::out_of_range for n outside [0, 2S].
double ladder_coefficient(int twice_spin, int n, Ladder direction);

// Hermitian operator restricted to one excitation sector, indexed by the
// sector's basis order. Entries are real by construction (all couplings and
// Zeeman shifts are real). Assembled from triplets; stored dense below
// kDenseThreshold, sparse above.
class SectorOperator {
 public:
  static constexpr int kDenseThreshold = 64;

  static SectorOperator from_triplets(int sector_n, int dim,
                                      const std::vector<Eigen::Triplet<double>>& entries);

  int sector() const { return sector_n_; }
  int dim() const { return dim_; }
  bool is_dense() const { return dense_.has_value(); }

  Eigen::MatrixXd dense() const;
  double coeff(int row, int col) const;
  double max_abs_coeff() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

 private:
  SectorOperator(int sector_n, int dim) : sector_n_(sector_n), dim_(dim) {}
  int sector_n_;
  int dim_;
  std::optional<Eigen::MatrixXd> dense_;
  std::optional<Eigen::SparseMatrix<double>> sparse_;
};

// H_B = -J sum over nearest-neighbor bus bonds of (S+_i S-_j + S-_i S+_j).
SectorOperator build_bus_hamiltonian(const ChainConfig& config, const SectorBasis& basis);

// H_I = -g (S+_s S-_1 + S+_r S-_N + h.c.): each register couples to its
// nearest bus end.
SectorOperator build_interaction_hamiltonian(const ChainConfig& config,
                                             const SectorBasis& basis);

// H_M = -h sum_i S^z_i = (-(N+2) h S + h n) * identity within sector n.
SectorOperator build_zeeman_hamiltonian(const ChainConfig& config, const SectorBasis& basis);

// H = H_B + H_I + H_M.
SectorOperator build_total_hamiltonian(const ChainConfig& config, const SectorBasis& basis);

namespace detail {

struct HoppingBond {
  int site_a;
  int site_b;
  double coupling;  // energy prefactor c in -c (S+_a S-_b + S-_a S+_b)
};

// Triplets of -c (S+_a S-_b + S-_a S+_b) summed over bonds, in the given
// basis. Works for any site count (used for both the chain and the bare bus).
std::vector<Eigen::Triplet<double>> hopping_triplets(const SectorBasis& basis,
                                                     const std::vector<HoppingBond>& bonds);

// Zeeman diagonal -h (num_sites * S - n) repeated over the sector basis.
std::vector<Eigen::Triplet<double>> zeeman_triplets(const SectorBasis& basis,
                                                    int twice_spin, double field_h);

}  // namespace detail

}  // namespace spinbus
