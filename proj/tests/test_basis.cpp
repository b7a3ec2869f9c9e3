#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "spinbus/basis.hpp"

using namespace spinbus;

namespace {

ChainConfig make_config(int bus, int twice_spin, int dim, int cap = -1) {
  ChainConfig c;
  c.bus_length = bus;
  c.twice_spin = twice_spin;
  c.qudit_dim = dim;
  c.excitation_cap = cap;
  return c;
}

}  // namespace

TEST_CASE("single excitation over three sites") {
  const ChainConfig c = make_config(1, 1, 2);
  const SectorBasis basis = enumerate_sector(c, 1);
  REQUIRE(basis.size() == 3);
  CHECK(basis.state(0) == OccupationVector{0, 0, 1});
  CHECK(basis.state(1) == OccupationVector{0, 1, 0});
  CHECK(basis.state(2) == OccupationVector{1, 0, 0});
}

TEST_CASE("uncapped sector size is a composition count") {
  // N=3 (5 sites), 2S >= 6 so the cap never binds, n=3: C(7,4) = 35.
  const ChainConfig c = make_config(3, 6, 4);
  CHECK(enumerate_sector(c, 3).size() == 35);
  CHECK(sector_dimension(5, 6, 3) == 35);
}

TEST_CASE("per-site cap excludes over-occupied states") {
  const ChainConfig c = make_config(1, 1, 2, 2);
  const SectorBasis basis = enumerate_sector(c, 2);
  REQUIRE(basis.size() == 3);
  std::set<OccupationVector> states(basis.states().begin(), basis.states().end());
  CHECK(states.count({1, 1, 0}) == 1);
  CHECK(states.count({1, 0, 1}) == 1);
  CHECK(states.count({0, 1, 1}) == 1);
  CHECK(states.count({2, 0, 0}) == 0);
}

TEST_CASE("sector out of range") {
  const ChainConfig c = make_config(1, 2, 3);
  CHECK_THROWS_AS(enumerate_sector(c, -1), std::out_of_range);
  CHECK_THROWS_AS(enumerate_sector(c, 3), std::out_of_range);  // cap defaults to d-1 = 2
}

TEST_CASE("sector sizes match brute-force bucketing") {
  for (int sites = 2; sites <= 4; ++sites) {
    for (int cap = 1; cap <= 3; ++cap) {
      std::map<int, long long> buckets;
      long long total_states = 1;
      for (int s = 0; s < sites; ++s) total_states *= cap + 1;
      for (long long idx = 0; idx < total_states; ++idx)
        ++buckets[total_occupation(oracle::unflatten(idx, sites, cap))];

      for (const auto& [n, count] : buckets) {
        CHECK(sector_dimension(sites, cap, n) == count);
        CHECK(SectorBasis(n, sites, cap).size() == count);
      }
    }
  }
}

TEST_CASE("index round trip") {
  const SectorBasis basis(3, 4, 2);
  for (int i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.state(i)) == i);
  CHECK_THROWS_AS(basis.index_of({3, 0, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(basis.index_of({1, 1, 0, 0}), std::out_of_range);  // wrong total
  CHECK(!basis.try_index_of({2, 2, 2, 2}).has_value());
}

TEST_CASE("lexicographic order is strictly increasing") {
  const SectorBasis basis(4, 5, 3);
  for (int i = 1; i < basis.size(); ++i) CHECK(basis.state(i - 1) < basis.state(i));
}

TEST_CASE("product state lands in its sector with unit norm") {
  const ChainConfig c = make_config(2, 4, 3);

  SUBCASE("vacuum") {
    const GlobalPureState s = product_state(c, {0, 0, 0, 0});
    REQUIRE(s.sectors.size() == 1);
    CHECK(s.sectors.count(0) == 1);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("sender doubly excited") {
    const GlobalPureState s = product_state(c, {2, 0, 0, 0});
    REQUIRE(s.sectors.count(2) == 1);
    const SectorBasis basis = enumerate_sector(c, 2);
    const Eigen::VectorXcd& amp = s.sectors.at(2);
    CHECK(amp(basis.index_of({2, 0, 0, 0})) == std::complex<double>(1.0, 0.0));
    CHECK(amp.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("cap violations rejected") {
    CHECK_THROWS_AS(product_state(c, {5, 0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(product_state(c, {1, 1, 1, 0}), std::domain_error);  // above n_max = 2
    CHECK_THROWS_AS(product_state(c, {1, 0, 0}), std::domain_error);     // wrong length
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(make_config(0, 1, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(1, 1, 3).validate(), std::invalid_argument);  // d > 2S+1
  CHECK_THROWS_AS(make_config(1, 2, 3, 100).validate(), std::invalid_argument);
  CHECK_NOTHROW(make_config(3, 20, 4).validate());

  ChainConfig negative_j = make_config(1, 2, 3);
  negative_j.coupling_j = 0.0;
  CHECK_THROWS_AS(negative_j.validate(), std::invalid_argument);

  ChainConfig zero_g = make_config(1, 2, 3);
  zero_g.coupling_g = 0.0;
  CHECK_NOTHROW(zero_g.validate());

  CHECK(make_config(1, 2, 3).qudit_exceeds_spin());
  CHECK(!make_config(1, 20, 3).qudit_exceeds_spin());
}
