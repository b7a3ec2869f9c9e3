#include "spinbus/config.hpp"

#include <sstream>
#include <stdexcept>

namespace spinbus {

void ChainConfig::validate() const {
  std::ostringstream bad;
  auto complain = [&bad](const std::string& msg) {
    if (bad.tellp() > 0) bad << "; ";
    bad << msg;
  };

  if (bus_length < 1) complain("bus_length must be >= 1");
  if (twice_spin < 1) complain("twice_spin must be >= 1");
  if (qudit_dim < 2) complain("qudit_dim must be >= 2");
  if (qudit_dim > twice_spin + 1)
    complain("qudit_dim must be <= 2S+1 (a qudit needs d levels on one spin)");
  if (!(coupling_j > 0.0)) complain("coupling_j must be > 0");
  if (!(coupling_g >= 0.0)) complain("coupling_g must be >= 0");
  if (!(field_h >= 0.0)) complain("field_h must be >= 0");
  if (cap() < 0 || cap() > max_total_excitation())
    complain("excitation_cap must lie in [0, 2S*(N+2)]");

  if (bad.tellp() > 0) throw std::invalid_argument("invalid chain config: " + bad.str());
}

}  // namespace spinbus
