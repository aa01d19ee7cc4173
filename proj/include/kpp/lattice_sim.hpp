#pragma once

#include <functional>
#include <vector>

#include "kpp/lattice.hpp"
#include "kpp/medium.hpp"
#include "kpp/spectral.hpp"

namespace kpp::lattice_sim {

/// Right-hand side of the lattice equation
///   du_j/dt = u_{j+1} - 2 u_j + u_{j-1} + f_j(u_j) u_j
/// on the state's window, ghosts per its boundary policy.
std::vector<double> rhs(const LatticeState& state, const MediumProfile& medium,
                        const NonlinearityModel& model);

using SampleCallback = std::function<void(const LatticeState&)>;

struct IntegrateOptions {
  bool auto_extend = true;        ///< grow the right edge ahead of the front
  double extend_threshold = 1e-12;
  int extend_chunk = 200;
  double invariant_slack = 1e-9;  ///< tolerance on the invariant region
  double sample_stride = 0.0;     ///< 0 = no sampling
  SampleCallback on_sample;
};

/// Classic fourth-order Runge-Kutta advance to t_end. dt must be <= 0.2
/// (stability margin for the explicit stencil). The invariant region
/// 0 <= u <= max(L0, initial max) is enforced; escapes raise
/// SimulationError naming the offending site.
LatticeState integrate(const LatticeState& state, double dt, double t_end,
                       const MediumProfile& medium,
                       const NonlinearityModel& model,
                       const IntegrateOptions& options = {});

struct StationaryProfile {
  int j_min;
  int j_max;
  std::vector<double> values;
  double residual;  ///< sup-norm of the stationary defect

  /// u*_j, extended by the background value 1 outside the window.
  double value_at(int j) const {
    if (j < j_min || j > j_max) return 1.0;
    return values[static_cast<std::size_t>(j - j_min)];
  }
  double min_value() const;
};

/// Long-time relaxation from u = 1 until the RHS sup-norm falls below
/// 1e-9; window must cover [-N-100, N+100]. Throws SimulationError if not
/// converged by t = 1e4.
StationaryProfile stationary_solution(const MediumProfile& medium,
                                      const NonlinearityModel& model,
                                      int j_min, int j_max);

/// Super-solution value  u_bar_j(t) = e^{-mu (j - c t)} phi^mu_j.
double super_solution(double mu, double c,
                      const spectral::TwistedEigenvector& phi, int j,
                      double t);

/// min(u_bar, u*) without overflowing the exponential factor.
double squeeze_upper(double mu, double c,
                     const spectral::TwistedEigenvector& phi,
                     const StationaryProfile& stationary, int j, double t);

/// Lemma bound d0; any d1 > d0 makes sub_solution a sub-solution.
double sub_solution_d0(double mu, double mu1, double c,
                       const spectral::TwistedEigenvector& phi_mu,
                       const spectral::TwistedEigenvector& phi_mu1, double L);

/// Sub-solution value
///   u_under_j(t) = e^{-mu (j-ct)} phi^mu_j - d1 e^{-mu1 (j-ct)} phi^mu1_j,
/// requiring mu < mu1 < min(2 mu, mu*). Composed as max(., 0) for initial
/// data and lower squeeze bounds.
double sub_solution(double mu, double mu1, double c,
                    const spectral::TwistedEigenvector& phi_mu,
                    const spectral::TwistedEigenvector& phi_mu1, double d1,
                    int j, double t);

/// max(u_under, 0) with the same overflow care as squeeze_upper.
double squeeze_lower(double mu, double mu1, double c,
                     const spectral::TwistedEigenvector& phi_mu,
                     const spectral::TwistedEigenvector& phi_mu1, double d1,
                     int j, double t);

struct ComparisonReport {
  bool ordered;             ///< u(t; z) <= u(t; w) + 1e-9 at all samples
  bool strict_after_zero;   ///< strict where the flow has had time to act
  double worst_violation;
  int violation_index;
  double violation_time;
};

/// Integrates both states (which must satisfy z <= w componentwise and share
/// a window) and reports whether ordering is preserved.
ComparisonReport comparison_check(const LatticeState& z, const LatticeState& w,
                                  double t_end, const MediumProfile& medium,
                                  const NonlinearityModel& model);

struct FrontConstruction {
  double c;
  double mu;
  double mu1;
  double d1;
  int n_used;       ///< last member of the squeezing sequence that ran
  bool converged;   ///< successive profiles within 1e-6 at matched times
  double cauchy_gap;               ///< last sup |u^n - u^{n-1}| at T_obs
  double monotonicity_violation;   ///< max positive part of u^n - u^{n-1}
  double squeeze_violation;        ///< max escape from [max(w,0), min(v,u*)]
  double tail_ratio_deviation;     ///< sup |u/(e^{-mu(j-ct)} phi) - 1| far right
  LatticeState final_state;        ///< profile at t = T_obs
  std::vector<LatticeState> samples;  ///< stride-sampled run of the last n
  StationaryProfile stationary;
  spectral::TwistedEigenvector phi_mu;
  spectral::TwistedEigenvector phi_mu1;
};

struct FrontOptions {
  int n_max = 8;
  double t_obs = 30.0;
  double dt = 0.05;
  double sample_stride = 0.25;
  double squeeze_tol = 1e-6;
  double cauchy_tol = 1e-6;
};

/// Squeezing construction of a transition front of speed c in (c*, c_hat]:
/// for n = 1..n_max integrate from min(u_bar, u*) at t = -n and verify the
/// runs decrease monotonically and stay inside the squeeze bounds. Throws
/// std::domain_error for speeds outside (c*, c_hat] and SimulationError on
/// squeeze violations beyond tolerance.
FrontConstruction construct_front(const MediumProfile& medium,
                                  const NonlinearityModel& model, double c,
                                  const FrontOptions& options = {});

}  // namespace kpp::lattice_sim
