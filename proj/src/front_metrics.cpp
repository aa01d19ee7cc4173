#include "kpp/front_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpp/errors.hpp"
#include "kpp/spectral.hpp"

namespace kpp::front_metrics {

namespace {

struct LineFit {
  double slope;
  double intercept;
  double rms;
  double slope_stderr;
};

LineFit least_squares(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.rms = std::sqrt(rss / static_cast<double>(n));
  fit.slope_stderr =
      n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace

FrontTrace extract_crossings(const std::vector<LatticeState>& run,
                             const lattice_sim::StationaryProfile& profile) {
  if (run.size() < 2) {
    throw std::invalid_argument("extract_crossings needs at least 2 samples");
  }
  FrontTrace trace;
  trace.level = 0.5 * profile.min_value();

  int j_lo = run.front().j_min;
  int j_hi = run.front().j_max;
  for (const auto& s : run) {
    j_lo = std::min(j_lo, s.j_min);
    j_hi = std::max(j_hi, s.j_max);
  }

  for (int j = j_lo; j <= j_hi; ++j) {
    // First sampled passage of the level from below, accepted only while
    // every site to the right is still below the level (this rejects the
    // left-moving flank of compactly seeded runs).
    for (std::size_t k = 1; k < run.size(); ++k) {
      if (!run[k].contains(j) || !run[k - 1].contains(j)) continue;
      double prev = run[k - 1].at(j);
      double cur = run[k].at(j);
      if (k == 1 && prev >= trace.level) break;  // already above at start
      if (prev < trace.level && cur >= trace.level) {
        bool rightmost = true;
        for (int l = j + 1; l <= run[k - 1].j_max; ++l) {
          if (run[k - 1].at(l) >= trace.level) {
            rightmost = false;
            break;
          }
        }
        if (rightmost) {
          double frac = (trace.level - prev) / (cur - prev);
          double t = run[k - 1].t + frac * (run[k].t - run[k - 1].t);
          trace.crossings.push_back(Crossing{j, t});
        }
        break;
      }
    }
  }

  trace.monotone = !trace.crossings.empty();
  for (std::size_t i = 1; i < trace.crossings.size(); ++i) {
    if (!(trace.crossings[i].t > trace.crossings[i - 1].t)) {
      trace.monotone = false;
    }
  }
  return trace;
}

SpeedFit fit_mean_speed(const FrontTrace& trace, double t_a, double t_b) {
  std::vector<double> ts, js;
  for (const Crossing& c : trace.crossings) {
    if (c.t >= t_a && c.t <= t_b) {
      ts.push_back(c.t);
      js.push_back(static_cast<double>(c.j));
    }
  }
  if (ts.size() < 10) {
    throw SimulationError("fit_mean_speed: fewer than 10 crossings in window");
  }
  LineFit fit = least_squares(ts, js);
  return SpeedFit{fit.slope, fit.intercept, fit.rms, 2.0 * fit.slope_stderr};
}

TailFit fit_tail_exponent(const LatticeState& state, double c, double r_lo,
                          double r_hi) {
  std::vector<double> xs, ys;
  for (int j = state.j_min; j <= state.j_max; ++j) {
    double x = static_cast<double>(j) - c * state.t;
    if (x < r_lo || x > r_hi) continue;
    double u = state.at(j);
    if (u <= 1e-14) continue;
    xs.push_back(x);
    ys.push_back(-std::log(u));
  }
  if (xs.size() < 4) {
    throw SimulationError(
        "fit_tail_exponent: too few usable sites (underflow?); shrink the "
        "range");
  }
  LineFit fit = least_squares(xs, ys);
  return TailFit{fit.slope, fit.intercept, fit.rms,
                 static_cast<int>(xs.size())};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::exists_in_interval:
      return "exists_in_interval";
    case Verdict::nonexistence_lambda:
      return "nonexistence_lambda";
    case Verdict::nonexistence_speed_low:
      return "nonexistence_speed_low";
    case Verdict::nonexistence_speed_high:
      return "nonexistence_speed_high";
    case Verdict::boundary_unresolved:
      return "boundary_unresolved";
  }
  return "unknown";
}

RegimeReport classify_regime(const MediumProfile& medium,
                             const NonlinearityModel& /*model*/,
                             std::optional<double> query_speed,
                             double boundary_tol) {
  auto bound = spectral::spectral_bound(medium, 1e-6);
  double lambda = std::max(1.0, bound.lambda);

  RegimeReport report;
  report.lambda_hat = lambda;
  report.summary = dispersion::solve_dispersion(lambda);
  report.query_speed = query_speed;
  report.c_lo = report.summary.c_star;
  report.c_hi = report.summary.c_hat;

  if (std::fabs(lambda - report.summary.lambda_star) <= boundary_tol) {
    report.verdict = Verdict::boundary_unresolved;
    return report;
  }
  if (lambda > report.summary.lambda_star) {
    report.verdict = Verdict::nonexistence_lambda;
    return report;
  }
  if (query_speed) {
    if (*query_speed < report.c_lo - 1e-9) {
      report.verdict = Verdict::nonexistence_speed_low;
      return report;
    }
    if (report.c_hi && *query_speed > *report.c_hi + 1e-9) {
      report.verdict = Verdict::nonexistence_speed_high;
      return report;
    }
  }
  report.verdict = Verdict::exists_in_interval;
  return report;
}

NonexistenceReport nonexistence_probe(const MediumProfile& medium,
                                      const NonlinearityModel& model,
                                      ProbeScenario scenario,
                                      double queried_speed) {
  NonexistenceReport report;
  report.scenario = scenario;
  report.queried_speed = queried_speed;

  RegimeReport regime = classify_regime(medium, model, queried_speed);
  report.classifier_verdict = regime.verdict;
  report.mu_required =
      queried_speed > regime.summary.c_star
          ? dispersion::mu_of_speed(queried_speed, regime.summary)
          : regime.summary.mu_star;

  // Forward run from compact data: the solution spreads at the spreading
  // speed whatever speed was queried.
  const int N = medium.radius();
  LatticeState init(-(N + 150), N + 260,
                    BoundaryPolicy::dirichlet_stationary_left_zero_right);
  init.t = 0.0;
  for (int j = -2; j <= 2; ++j) init.at(j) = 1.0;

  std::vector<LatticeState> samples;
  lattice_sim::IntegrateOptions opts;
  opts.sample_stride = 0.25;
  opts.on_sample = [&samples](const LatticeState& s) {
    samples.push_back(s);
  };
  const double t_end = 60.0;
  LatticeState final_state =
      lattice_sim::integrate(init, 0.05, t_end, medium, model, opts);

  auto stationary = lattice_sim::stationary_solution(
      medium, model, -(N + 150), N + 260);
  FrontTrace trace = extract_crossings(samples, stationary);
  SpeedFit speed = fit_mean_speed(trace, 35.0, t_end);
  report.measured_speed = speed.c_est;

  TailFit tail = fit_tail_exponent(final_state, speed.c_est, 8.0, 22.0);
  report.tail_mu_est = tail.mu_est;

  // Evidence for the K e^{-mu*(|j|-ct)} envelope ahead of the front.
  double ratio = 0.0;
  double mu_star = regime.summary.mu_star;
  for (int j = static_cast<int>(std::ceil(speed.c_est * t_end));
       j <= final_state.j_max; ++j) {
    double envelope =
        std::exp(-mu_star * (std::fabs(static_cast<double>(j)) -
                             speed.c_est * t_end));
    double u = final_state.at(j);
    if (u > 1e-14 && envelope > 1e-280) {
      ratio = std::max(ratio, u / envelope);
    }
  }
  report.mu_star_bound_max_ratio = ratio;

  const double c_star = regime.summary.c_star;
  switch (scenario) {
    case ProbeScenario::lambda_supercritical:
      report.consistent =
          regime.verdict == Verdict::nonexistence_lambda &&
          std::fabs(report.measured_speed - queried_speed) >
              0.1 * queried_speed &&
          std::fabs(report.measured_speed - c_star) < 0.15 * c_star;
      break;
    case ProbeScenario::speed_above_chat:
      report.consistent =
          regime.verdict == Verdict::nonexistence_speed_high &&
          report.tail_mu_est > report.mu_required + 0.05;
      break;
  }
  return report;
}

}  // namespace kpp::front_metrics
