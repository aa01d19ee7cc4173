#include "kpp/lattice_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kpp/dispersion.hpp"
#include "kpp/errors.hpp"
#include "kpp/kernels.hpp"

namespace kpp::lattice_sim {

namespace {

long steps_for(double span, double dt, const char* what) {
  double raw = span / dt;
  long steps = std::lround(raw);
  if (steps < 0 || std::fabs(raw - static_cast<double>(steps)) > 1e-9) {
    throw std::invalid_argument(std::string(what) +
                                ": time span must be a multiple of dt");
  }
  return steps;
}

/// RK4 stepper over a halo-padded window with constant Dirichlet ghosts.
class Stepper {
 public:
  Stepper(const LatticeState& state, const MediumProfile& medium,
          const NonlinearityModel& model, double invariant_slack)
      : j_min_(state.j_min),
        ghost_left_(state.ghost_left()),
        ghost_right_(state.ghost_right()),
        medium_(&medium),
        slack_(invariant_slack) {
    n_ = static_cast<int>(state.size());
    u_.assign(state.size() + 2, 0.0);
    std::copy(state.values.begin(), state.values.end(), u_.begin() + 1);
    stage_.assign(state.size() + 2, 0.0);
    k1_.assign(state.size(), 0.0);
    k2_ = k3_ = k4_ = k1_;
    a_ = medium.sample(state.j_min, state.j_max);
    set_ghosts();
    double m = 0.0;
    for (double v : state.values) m = std::max(m, v);
    bound_ = std::max(model.effective_L0(medium), m);
  }

  void step(double dt) {
    namespace kn = kernels;
    const std::size_t n = static_cast<std::size_t>(n_);
    double* u = u_.data() + 1;
    double* s = stage_.data() + 1;
    kn::lattice_rhs(u, a_.data(), k1_.data(), n);
    kn::add_scaled(u, k1_.data(), 0.5 * dt, s, n);
    kn::lattice_rhs(s, a_.data(), k2_.data(), n);
    kn::add_scaled(u, k2_.data(), 0.5 * dt, s, n);
    kn::lattice_rhs(s, a_.data(), k3_.data(), n);
    kn::add_scaled(u, k3_.data(), dt, s, n);
    kn::lattice_rhs(s, a_.data(), k4_.data(), n);
    kn::rk4_combine(u, k1_.data(), k2_.data(), k3_.data(), k4_.data(), dt, n);
  }

  void check_invariant(double t) const {
    for (int i = 0; i < n_; ++i) {
      double v = u_[static_cast<std::size_t>(i) + 1];
      if (v < -slack_ || v > bound_ + slack_) {
        std::ostringstream msg;
        msg << "invariant region violated at j = " << (j_min_ + i)
            << ", t = " << t << ", u = " << v;
        throw SimulationError(msg.str());
      }
    }
  }

  bool near_right_edge(double threshold) const {
    int guard = std::min(6, n_);
    for (int i = n_ - guard; i < n_; ++i) {
      if (u_[static_cast<std::size_t>(i) + 1] > threshold) return true;
    }
    return false;
  }

  void extend_right(int chunk) {
    int old_n = n_;
    n_ += chunk;
    u_.resize(static_cast<std::size_t>(n_) + 2, 0.0);
    // move the right ghost slot
    u_[static_cast<std::size_t>(old_n) + 1] = 0.0;
    u_[static_cast<std::size_t>(n_) + 1] = ghost_right_;
    stage_.assign(static_cast<std::size_t>(n_) + 2, 0.0);
    k1_.assign(static_cast<std::size_t>(n_), 0.0);
    k2_ = k3_ = k4_ = k1_;
    a_ = medium_->sample(j_min_, j_min_ + n_ - 1);
    set_ghosts();
  }

  double rhs_sup_norm() {
    kernels::lattice_rhs(u_.data() + 1, a_.data(), k1_.data(),
                         static_cast<std::size_t>(n_));
    return kernels::max_abs(k1_.data(), static_cast<std::size_t>(n_));
  }

  LatticeState snapshot(double t, BoundaryPolicy policy) const {
    LatticeState s(j_min_, j_min_ + n_ - 1, policy);
    s.t = t;
    std::copy(u_.begin() + 1, u_.end() - 1, s.values.begin());
    return s;
  }

  int size() const { return n_; }

 private:
  void set_ghosts() {
    u_[0] = ghost_left_;
    u_[static_cast<std::size_t>(n_) + 1] = ghost_right_;
    stage_[0] = ghost_left_;
    stage_[static_cast<std::size_t>(n_) + 1] = ghost_right_;
  }

  int j_min_;
  int n_;
  double ghost_left_, ghost_right_;
  const MediumProfile* medium_;
  double slack_;
  double bound_;
  std::vector<double> u_, stage_, k1_, k2_, k3_, k4_;
  std::vector<double> a_;
};

}  // namespace

std::vector<double> rhs(const LatticeState& state, const MediumProfile& medium,
                        const NonlinearityModel& /*model*/) {
  std::vector<double> padded(state.size() + 2);
  padded[0] = state.ghost_left();
  padded[state.size() + 1] = state.ghost_right();
  std::copy(state.values.begin(), state.values.end(), padded.begin() + 1);
  std::vector<double> a = medium.sample(state.j_min, state.j_max);
  std::vector<double> out(state.size());
  kernels::lattice_rhs(padded.data() + 1, a.data(), out.data(), state.size());
  return out;
}

LatticeState integrate(const LatticeState& state, double dt, double t_end,
                       const MediumProfile& medium,
                       const NonlinearityModel& model,
                       const IntegrateOptions& options) {
  if (!(dt > 0.0 && dt <= 0.2)) {
    throw std::invalid_argument("dt must lie in (0, 0.2]");
  }
  if (t_end < state.t) throw std::invalid_argument("t_end precedes state.t");

  const long steps = steps_for(t_end - state.t, dt, "integrate");
  long stride_steps = 0;
  if (options.sample_stride > 0.0) {
    stride_steps = steps_for(options.sample_stride, dt, "sample_stride");
    if (stride_steps == 0) {
      throw std::invalid_argument("sample_stride smaller than dt");
    }
  }

  Stepper stepper(state, medium, model, options.invariant_slack);
  if (stride_steps > 0 && options.on_sample) {
    options.on_sample(stepper.snapshot(state.t, state.policy));
  }

  const bool extend =
      options.auto_extend &&
      state.policy == BoundaryPolicy::dirichlet_stationary_left_zero_right;
  for (long s = 1; s <= steps; ++s) {
    stepper.step(dt);
    double t = state.t + static_cast<double>(s) * dt;
    stepper.check_invariant(t);
    if (extend && s % 20 == 0 &&
        stepper.near_right_edge(options.extend_threshold)) {
      stepper.extend_right(options.extend_chunk);
    }
    if (stride_steps > 0 && options.on_sample && s % stride_steps == 0) {
      options.on_sample(stepper.snapshot(t, state.policy));
    }
  }
  return stepper.snapshot(t_end, state.policy);
}

double StationaryProfile::min_value() const {
  double m = values.empty() ? 1.0 : values[0];
  for (double v : values) m = std::min(m, v);
  return m;
}

StationaryProfile stationary_solution(const MediumProfile& medium,
                                      const NonlinearityModel& model,
                                      int j_min, int j_max) {
  const int N = medium.radius();
  if (j_min > -(N + 100) || j_max < N + 100) {
    throw std::invalid_argument(
        "stationary window must cover [-N-100, N+100]");
  }

  // Relax from u = 1 with the background value pinned at both ghosts
  // (the profile tends to 1 on both sides, unlike front runs).
  const double dt = 0.05;
  const int steps_per_check = 20;
  const std::size_t n = static_cast<std::size_t>(j_max - j_min + 1);
  std::vector<double> padded(n + 2, 1.0);
  std::vector<double> a = medium.sample(j_min, j_max);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n + 2, 1.0);
  double* u = padded.data() + 1;
  double* s = stage.data() + 1;
  double t = 0.0;
  double residual = 1.0;
  while (t < 1e4) {
    for (int i = 0; i < steps_per_check; ++i) {
      kernels::lattice_rhs(u, a.data(), k1.data(), n);
      kernels::add_scaled(u, k1.data(), 0.5 * dt, s, n);
      kernels::lattice_rhs(s, a.data(), k2.data(), n);
      kernels::add_scaled(u, k2.data(), 0.5 * dt, s, n);
      kernels::lattice_rhs(s, a.data(), k3.data(), n);
      kernels::add_scaled(u, k3.data(), dt, s, n);
      kernels::lattice_rhs(s, a.data(), k4.data(), n);
      kernels::rk4_combine(u, k1.data(), k2.data(), k3.data(), k4.data(), dt,
                           n);
    }
    t += dt * steps_per_check;
    kernels::lattice_rhs(u, a.data(), k1.data(), n);
    residual = kernels::max_abs(k1.data(), n);
    if (residual <= 1e-9) break;
  }
  if (residual > 1e-9) {
    throw SimulationError("stationary_solution: no convergence by t = 1e4");
  }

  StationaryProfile profile;
  profile.j_min = j_min;
  profile.j_max = j_max;
  profile.values.assign(padded.begin() + 1, padded.end() - 1);
  profile.residual = residual;
  return profile;
}

double super_solution(double mu, double c,
                      const spectral::TwistedEigenvector& phi, int j,
                      double t) {
  double e = -mu * (static_cast<double>(j) - c * t);
  if (e > 700.0) {
    throw std::overflow_error("super_solution overflows; use squeeze_upper");
  }
  return std::exp(e) * phi.value_at(j);
}

double squeeze_upper(double mu, double c,
                     const spectral::TwistedEigenvector& phi,
                     const StationaryProfile& stationary, int j, double t) {
  double e = -mu * (static_cast<double>(j) - c * t);
  double ustar = stationary.value_at(j);
  if (e > 60.0) return ustar;  // exponential factor dwarfs u*
  return std::min(std::exp(e) * phi.value_at(j), ustar);
}

double sub_solution_d0(double mu, double mu1, double c,
                       const spectral::TwistedEigenvector& phi_mu,
                       const spectral::TwistedEigenvector& phi_mu1, double L) {
  if (!(mu < mu1)) throw std::domain_error("need mu < mu1");
  double gap = mu1 * c - dispersion::lambda_of_mu(mu1);
  if (!(gap > 0.0)) {
    throw std::domain_error("need mu1 c > lambda(mu1), i.e. c > c(mu1)");
  }
  double sup_mu = phi_mu.sup();
  double inf_mu1 = phi_mu1.inf();
  if (!(inf_mu1 > 0.0)) {
    throw std::domain_error("phi^mu1 must be positive with positive infimum");
  }
  return std::max(sup_mu / inf_mu1, L * sup_mu * sup_mu / (gap * inf_mu1));
}

double sub_solution(double mu, double mu1, double c,
                    const spectral::TwistedEigenvector& phi_mu,
                    const spectral::TwistedEigenvector& phi_mu1, double d1,
                    int j, double t) {
  if (!(mu < mu1 && mu1 < 2.0 * mu)) {
    throw std::domain_error("need mu < mu1 < 2 mu");
  }
  double x = static_cast<double>(j) - c * t;
  double e1 = -mu * x;
  double e2 = -mu1 * x;
  if (std::max(e1, e2) > 700.0) {
    throw std::overflow_error("sub_solution overflows; use squeeze_lower");
  }
  return std::exp(e1) * phi_mu.value_at(j) -
         d1 * std::exp(e2) * phi_mu1.value_at(j);
}

double squeeze_lower(double mu, double mu1, double c,
                     const spectral::TwistedEigenvector& phi_mu,
                     const spectral::TwistedEigenvector& phi_mu1, double d1,
                     int j, double t) {
  double x = static_cast<double>(j) - c * t;
  // For x <= 0 the mu1 term dominates and the difference is negative.
  if (-mu * x > 500.0) return 0.0;
  if (-mu * x < -700.0) return 0.0;  // both terms underflow
  double v = std::exp(-mu * x) * phi_mu.value_at(j) -
             d1 * std::exp(-mu1 * x) * phi_mu1.value_at(j);
  return std::max(v, 0.0);
}

ComparisonReport comparison_check(const LatticeState& z, const LatticeState& w,
                                  double t_end, const MediumProfile& medium,
                                  const NonlinearityModel& model) {
  if (z.j_min != w.j_min || z.j_max != w.j_max || z.policy != w.policy) {
    throw std::invalid_argument("comparison_check: windows must match");
  }
  int diff_lo = z.j_max + 1, diff_hi = z.j_min - 1;
  for (int j = z.j_min; j <= z.j_max; ++j) {
    if (z.at(j) > w.at(j)) {
      throw std::invalid_argument("comparison_check: need z <= w at t = 0");
    }
    if (z.at(j) != w.at(j)) {
      diff_lo = std::min(diff_lo, j);
      diff_hi = std::max(diff_hi, j);
    }
  }
  const bool differ = diff_lo <= diff_hi;

  IntegrateOptions opts;
  opts.auto_extend = false;
  opts.sample_stride = 0.5;
  std::vector<LatticeState> zs, ws;
  opts.on_sample = [&zs](const LatticeState& s) { zs.push_back(s); };
  integrate(z, 0.05, t_end, medium, model, opts);
  opts.on_sample = [&ws](const LatticeState& s) { ws.push_back(s); };
  integrate(w, 0.05, t_end, medium, model, opts);

  ComparisonReport report{true, true, 0.0, 0, 0.0};
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const LatticeState& a = zs[k];
    const LatticeState& b = ws[k];
    double t = a.t - z.t;
    for (int j = a.j_min; j <= a.j_max; ++j) {
      double gap = a.at(j) - b.at(j);
      if (gap > report.worst_violation) {
        report.worst_violation = gap;
        report.violation_index = j;
        report.violation_time = a.t;
      }
      if (gap > 1e-9) report.ordered = false;
    }
    if (differ && t > 0.0) {
      // Strictness is only discernible where the flow has had time to act
      // and values are above rounding noise.
      int reach = static_cast<int>(2.0 * t);
      int lo = std::max(a.j_min, diff_lo - reach);
      int hi = std::min(a.j_max, diff_hi + reach);
      for (int j = lo; j <= hi; ++j) {
        if (b.at(j) > 1e-12 && !(a.at(j) < b.at(j))) {
          report.strict_after_zero = false;
        }
      }
    }
  }
  return report;
}

FrontConstruction construct_front(const MediumProfile& medium,
                                  const NonlinearityModel& model, double c,
                                  const FrontOptions& options) {
  using spectral::TwistedEigenvector;
  const int N = medium.radius();

  auto bound = spectral::spectral_bound(medium, 1e-8);
  auto summary = dispersion::solve_dispersion(std::max(1.0, bound.lambda));
  if (!(c > summary.c_star)) {
    throw std::domain_error("construct_front: speed must exceed c_star");
  }
  if (summary.c_hat && c > *summary.c_hat + 1e-9) {
    throw std::domain_error("construct_front: speed exceeds c_hat");
  }

  if (options.n_max < 1) {
    throw std::invalid_argument("construct_front: n_max must be >= 1");
  }

  FrontConstruction fc;
  fc.n_used = 0;
  fc.c = c;
  fc.mu = dispersion::mu_of_speed(c, summary);
  fc.mu1 = 0.5 * (fc.mu + std::min(2.0 * fc.mu, summary.mu_star));

  auto r_mu = spectral::twisted_eigenvector(medium, fc.mu);
  auto r_mu1 = spectral::twisted_eigenvector(medium, fc.mu1);
  if (!r_mu.positive() || !r_mu1.positive()) {
    throw NumericsError(
        "construct_front: twisted eigenvector lost positivity inside the "
        "admissible range");
  }
  fc.phi_mu = *r_mu.vector;
  fc.phi_mu1 = *r_mu1.vector;
  fc.d1 = 1.01 * sub_solution_d0(fc.mu, fc.mu1, c, fc.phi_mu, fc.phi_mu1,
                                 model.L);

  const int left = std::min(-(N + 60),
                            -static_cast<int>(std::ceil(
                                c * static_cast<double>(options.n_max))) -
                                (N + 80));
  const int right =
      static_cast<int>(std::ceil(c * options.t_obs)) + N + 120;
  fc.stationary = stationary_solution(
      medium, model, std::min(left, -(N + 100)), std::max(right, N + 100));

  const long per_unit = std::lround(1.0 / options.sample_stride);
  if (std::fabs(per_unit * options.sample_stride - 1.0) > 1e-9) {
    throw std::invalid_argument("sample_stride must divide 1.0");
  }

  fc.monotonicity_violation = 0.0;
  fc.squeeze_violation = 0.0;
  fc.cauchy_gap = 0.0;
  fc.converged = false;

  std::vector<LatticeState> prev_samples;
  for (int n = 1; n <= options.n_max; ++n) {
    LatticeState init(left, right,
                      BoundaryPolicy::dirichlet_stationary_left_zero_right);
    init.t = -static_cast<double>(n);
    for (int j = left; j <= right; ++j) {
      init.at(j) =
          squeeze_upper(fc.mu, c, fc.phi_mu, fc.stationary, j, init.t);
    }

    std::vector<LatticeState> samples;
    IntegrateOptions opts;
    opts.auto_extend = false;  // window pre-sized for the whole family
    opts.sample_stride = options.sample_stride;
    opts.on_sample = [&samples](const LatticeState& s) {
      samples.push_back(s);
    };
    integrate(init, options.dt, options.t_obs, medium, model, opts);

    // Squeeze bounds at every sample.
    for (const LatticeState& s : samples) {
      for (int j = s.j_min; j <= s.j_max; ++j) {
        double upper =
            squeeze_upper(fc.mu, c, fc.phi_mu, fc.stationary, j, s.t);
        double lower = squeeze_lower(fc.mu, fc.mu1, c, fc.phi_mu, fc.phi_mu1,
                                     fc.d1, j, s.t);
        double esc = std::max(s.at(j) - upper, lower - s.at(j));
        fc.squeeze_violation = std::max(fc.squeeze_violation, esc);
      }
    }
    if (fc.squeeze_violation > options.squeeze_tol) {
      throw SimulationError("construct_front: squeeze bound violated");
    }

    // Monotone decrease against the previous member at matched times.
    if (!prev_samples.empty()) {
      // samples[i] is at t = -n + i*stride; prev_samples[i'] at
      // t = -(n-1) + i'*stride, so i' = i - per_unit.
      for (std::size_t i = static_cast<std::size_t>(per_unit);
           i < samples.size(); ++i) {
        const LatticeState& cur = samples[i];
        const LatticeState& prev =
            prev_samples[i - static_cast<std::size_t>(per_unit)];
        for (int j = cur.j_min; j <= cur.j_max; ++j) {
          fc.monotonicity_violation =
              std::max(fc.monotonicity_violation, cur.at(j) - prev.at(j));
        }
      }
      double gap = 0.0;
      const LatticeState& last = samples.back();
      const LatticeState& prev_last = prev_samples.back();
      for (int j = last.j_min; j <= last.j_max; ++j) {
        gap = std::max(gap, std::fabs(last.at(j) - prev_last.at(j)));
      }
      fc.cauchy_gap = gap;
      if (gap < options.cauchy_tol) {
        fc.converged = true;
        fc.n_used = n;
        fc.final_state = samples.back();
        fc.samples = std::move(samples);
        break;
      }
    }
    fc.n_used = n;
    fc.final_state = samples.back();
    prev_samples = fc.samples = std::move(samples);
  }

  // Tail ratio against the super-solution envelope far ahead of the front.
  {
    const LatticeState& s = fc.final_state;
    double dev = 0.0;
    int lo = static_cast<int>(std::ceil(c * s.t)) + std::max(N, 0) + 8;
    int hi = lo + 17;
    for (int j = lo; j <= hi && j <= s.j_max; ++j) {
      double envelope = super_solution(fc.mu, c, fc.phi_mu, j, s.t);
      if (envelope > 1e-280 && s.at(j) > 0.0) {
        dev = std::max(dev, std::fabs(s.at(j) / envelope - 1.0));
      }
    }
    fc.tail_ratio_deviation = dev;
  }
  return fc;
}

}  // namespace kpp::lattice_sim
