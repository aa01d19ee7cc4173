#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kpp {

/// Boundary handling for finite-window runs. Fronts connect the stationary
/// state (left) to zero (right), so the default pins the left ghost to the
/// background stationary value 1 and the right ghost to 0; the window must
/// extend far enough past the perturbation for the pin to be accurate.
enum class BoundaryPolicy {
  dirichlet_stationary_left_zero_right,
  clamp_zero_both,
};

/// Finite-window snapshot of u_j(t).
struct LatticeState {
  int j_min = 0;
  int j_max = -1;
  double t = 0.0;
  BoundaryPolicy policy = BoundaryPolicy::dirichlet_stationary_left_zero_right;
  std::vector<double> values;  ///< size j_max - j_min + 1, indexed from j_min

  LatticeState() = default;
  LatticeState(int jmin, int jmax, BoundaryPolicy p)
      : j_min(jmin),
        j_max(jmax),
        policy(p),
        values(static_cast<std::size_t>(jmax - jmin + 1), 0.0) {
    if (jmax < jmin) throw std::invalid_argument("empty lattice window");
  }

  std::size_t size() const { return values.size(); }
  bool contains(int j) const { return j >= j_min && j <= j_max; }

  double& at(int j) { return values[static_cast<std::size_t>(j - j_min)]; }
  double at(int j) const {
    return values[static_cast<std::size_t>(j - j_min)];
  }

  /// Value with the boundary ghost extension applied outside the window.
  double value_or_ghost(int j) const {
    if (contains(j)) return at(j);
    if (policy == BoundaryPolicy::clamp_zero_both) return 0.0;
    return j < j_min ? 1.0 : 0.0;
  }

  double ghost_left() const {
    return policy == BoundaryPolicy::clamp_zero_both ? 0.0 : 1.0;
  }
  double ghost_right() const { return 0.0; }
};

}  // namespace kpp
