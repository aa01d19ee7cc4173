#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kpp/dispersion.hpp"
#include "kpp/lattice.hpp"
#include "kpp/lattice_sim.hpp"
#include "kpp/medium.hpp"

namespace kpp::front_metrics {

struct Crossing {
  int j;
  double t;  ///< interpolated first-passage time of the level at site j
};

struct SpeedFit {
  double c_est;
  double intercept;
  double rms_residual;   ///< RMS of j - (intercept + c_est t) over the fit
  double ci_halfwidth;   ///< 2x standard error of the slope
};

struct FrontTrace {
  double level;  ///< half the minimal stationary value over the window
  std::vector<Crossing> crossings;
  bool monotone;  ///< crossing times strictly increasing in j
  std::optional<SpeedFit> speed_fit;
};

/// Level-crossing times per Definition of the mean wave speed: t_j is the
/// first sampled-and-interpolated time u_j reaches the level while every
/// site to the right is still below it. Non-monotone passages leave the
/// trace flagged (monotone = false) rather than invented.
FrontTrace extract_crossings(const std::vector<LatticeState>& run,
                             const lattice_sim::StationaryProfile& profile);

/// Least-squares slope of j against t_j over crossings with t in
/// [t_a, t_b]; requires at least 10 of them.
SpeedFit fit_mean_speed(const FrontTrace& trace, double t_a, double t_b);

struct TailFit {
  double mu_est;
  double intercept;
  double rms_residual;
  int points;
};

/// Least-squares slope of -ln u_j against (j - c t) over the window
/// j - c t in [r_lo, r_hi]. Sites with u below 1e-14 are rejected; if fewer
/// than 4 usable points remain, throws SimulationError (shrink the range).
TailFit fit_tail_exponent(const LatticeState& state, double c, double r_lo,
                          double r_hi);

enum class Verdict {
  exists_in_interval,
  nonexistence_lambda,
  nonexistence_speed_low,
  nonexistence_speed_high,
  boundary_unresolved,
};

std::string verdict_name(Verdict v);

struct RegimeReport {
  double lambda_hat;
  dispersion::DispersionSummary summary;
  Verdict verdict;
  std::optional<double> query_speed;
  /// Existence interval [c*, c_hat]; c_hat empty = unbounded.
  double c_lo;
  std::optional<double> c_hi;
};

/// Theorem-style classification of a medium: spectral bound lambda via
/// M-doubling, then the verdict table. A query speed, when supplied, maps
/// speeds outside [c*, c_hat] to the two speed verdicts. lambda within
/// boundary_tol of lambda* is left unresolved (the theorem does not cover
/// the line lambda = lambda*).
RegimeReport classify_regime(const MediumProfile& medium,
                             const NonlinearityModel& model,
                             std::optional<double> query_speed = std::nullopt,
                             double boundary_tol = 1e-4);

enum class ProbeScenario {
  lambda_supercritical,  ///< lambda > lambda*: fronts cannot exist at all
  speed_above_chat,      ///< query c > c_hat on a window medium
};

struct NonexistenceReport {
  ProbeScenario scenario;
  Verdict classifier_verdict;
  double queried_speed;
  double measured_speed;    ///< spreading speed measured from compact data
  double mu_star_bound_max_ratio;  ///< sup u / (K e^{-mu*(|j|-ct)}) fit
  double tail_mu_est;       ///< fitted right-tail exponent of the run
  double mu_required;       ///< decay exponent the queried speed would need
  bool consistent;          ///< evidence agrees with the nonexistence claim
};

/// Numerical evidence for the nonexistence regimes: runs compact initial
/// data forward, measures the locked spreading speed and tail decay, and
/// checks them against the obstruction the theory predicts. Reports are
/// evidence, not certificates.
NonexistenceReport nonexistence_probe(const MediumProfile& medium,
                                      const NonlinearityModel& model,
                                      ProbeScenario scenario,
                                      double queried_speed);

}  // namespace kpp::front_metrics
