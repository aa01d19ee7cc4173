#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

/// Raised when an iterative solver fails to reach its tolerance. Solver
/// failures are never silently replaced by a best-effort value.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Raised when a run leaves its validity envelope (invariant-region escape,
/// truncated window, non-convergent relaxation).
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace kpp
