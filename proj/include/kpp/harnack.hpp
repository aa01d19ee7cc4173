#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kpp::harnack {

/// Delta*(alpha) on the 2-regular graph: every edge weight is 1 and
/// m(x) = 2, so the condition mu_xy >= alpha m(x) holds iff alpha <= 1/2.
bool check_delta_star(double alpha);

struct DoublingReport {
  bool holds;
  double worst_ratio;  ///< max over r of V(B_2r)/V(B_r); tends to 2 from below
  int worst_r;
};

/// V(B_2r)/V(B_r) = (4r+1)/(2r+1) <= 2 for every r <= r_max, by exhaustive
/// counting.
DoublingReport check_doubling(int r_max);

struct PoincareResult {
  double lhs;  ///< sum_{B_r} m(x) (v - vbar)^2
  double rhs;  ///< 12 r^2 * edge energy (ordered pairs within B_r)
  bool holds;
};

/// Strong Poincare inequality with C2 = 12: the right-hand edge sum runs
/// over ordered pairs inside B_r itself (each edge twice), not B_2r.
/// `v` holds 2r+1 values on the ball around the center.
PoincareResult check_poincare(std::span<const double> v, int r);

struct CylinderSpec {
  int r = 10;
  double eta = 0.5;
  double theta1 = 1.0;
  double theta2 = 2.0;
  double theta3 = 3.0;
  double theta4 = 4.0;
};

struct HarnackTrial {
  double sup_q_minus;
  double inf_q_plus;
  double ratio;    ///< sup / inf
  bool excluded;   ///< inf at rounding zero; trial reported but not counted
};

/// Integrates the graph heat equation 2 u_t = u(x-1) - 2u(x) + u(x+1) from
/// a nonnegative initial condition supported on B_r (2r+1 values around the
/// center), on a window padded so the boundary cannot reach the cylinder.
/// Returns sup over Q- = [theta1 r^2, theta2 r^2] x B_{eta r} against inf
/// over Q+ = [theta3 r^2, theta4 r^2] x B_{eta r}.
HarnackTrial harnack_ratio(std::span<const double> initial,
                           const CylinderSpec& spec);

struct HarnackReport {
  CylinderSpec spec;
  std::vector<HarnackTrial> trials;
  double c_empirical;  ///< max ratio over non-excluded trials
  int excluded;
};

/// Runs `trials` random nonnegative initial conditions (plus the delta and
/// constant profiles) through harnack_ratio and accumulates the empirical
/// constant.
HarnackReport harnack_trials(const CylinderSpec& spec, int trials,
                             std::uint64_t seed);

}  // namespace kpp::harnack
