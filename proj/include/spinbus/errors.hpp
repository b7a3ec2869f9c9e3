#pragma once

#include <stdexcept>
#include <string>

namespace spinbus {

// A request that is well-formed but outside what the protocol supports,
// e.g. asking for the optimal time on an even-length bus (no zero mode).
class unsupported_configuration : public std::runtime_error {
 public:
  explicit unsupported_configuration(const std::string& what)
      : std::runtime_error(what) {}
};

// Thermal truncation cannot meet the requested tail tolerance.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& what, int suggested_cut)
      : std::runtime_error(what), suggested_cut(suggested_cut) {}
  int suggested_cut;
};

}  // namespace spinbus
