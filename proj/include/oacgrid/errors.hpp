#pragma once

#include <stdexcept>
#include <string>

namespace oac {

/// Configuration rejected by an invariant check (q < 2, bad noise scale, ...).
class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical solver could not complete (bad bracket, multiple crossings, ...).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oac
