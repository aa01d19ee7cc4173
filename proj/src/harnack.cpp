#include "kpp/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "kpp/heat_kernel.hpp"
#include "kpp/kernels.hpp"

namespace kpp::harnack {

bool check_delta_star(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be > 0");
  return 1.0 >= alpha * 2.0;
}

DoublingReport check_doubling(int r_max) {
  if (r_max < 1) throw std::domain_error("r_max must be >= 1");
  DoublingReport report{true, 0.0, 0};
  for (int r = 1; r <= r_max; ++r) {
    // V(B_r) = 2 (2r + 1) exactly on the 2-regular graph.
    double vr = 2.0 * (2.0 * r + 1.0);
    double v2r = 2.0 * (4.0 * r + 1.0);
    double ratio = v2r / vr;
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_r = r;
    }
    if (ratio > 2.0) report.holds = false;
  }
  return report;
}

PoincareResult check_poincare(std::span<const double> v, int r) {
  if (r < 1) throw std::domain_error("r must be >= 1");
  if (v.size() != static_cast<std::size_t>(2 * r + 1)) {
    throw std::invalid_argument("v must have 2r+1 entries");
  }
  const double m = 2.0;
  double volume = m * static_cast<double>(2 * r + 1);
  double mean = 0.0;
  for (double x : v) mean += m * x;
  mean /= volume;

  double lhs = 0.0;
  for (double x : v) lhs += m * (x - mean) * (x - mean);

  // Ordered pairs within the ball count each edge twice.
  double energy = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double d = v[i + 1] - v[i];
    energy += 2.0 * d * d;
  }
  double rhs = 12.0 * static_cast<double>(r) * static_cast<double>(r) * energy;
  return PoincareResult{lhs, rhs, lhs <= rhs + 1e-12 * std::max(1.0, rhs)};
}

HarnackTrial harnack_ratio(std::span<const double> initial,
                           const CylinderSpec& spec) {
  const int r = spec.r;
  if (r < 1) throw std::domain_error("cylinder radius must be >= 1");
  if (initial.size() != static_cast<std::size_t>(2 * r + 1)) {
    throw std::invalid_argument("initial data must have 2r+1 entries");
  }
  if (!(spec.eta > 0.0 && spec.eta < 1.0) ||
      !(0.0 < spec.theta1 && spec.theta1 < spec.theta2 &&
        spec.theta2 < spec.theta3 && spec.theta3 < spec.theta4)) {
    throw std::domain_error("cylinder parameters violate the definition");
  }
  double mass = 0.0;
  for (double x : initial) {
    if (x < 0.0) throw std::domain_error("initial data must be nonnegative");
    mass += x;
  }
  if (mass == 0.0) {
    throw std::domain_error("initial data must not vanish identically");
  }

  const double t_final = spec.theta4 * static_cast<double>(r) * r;
  // Pad so that boundary influence cannot reach B_r over the full cylinder
  // (unit propagation speed of the lattice kernel).
  const int pad = heat_kernel::kernel_support_radius(t_final);
  const int half = r + pad;
  const std::size_t n = static_cast<std::size_t>(2 * half + 1);

  std::vector<double> u(n + 2, 0.0);  // halo cells stay 0
  for (int j = -r; j <= r; ++j) {
    u[static_cast<std::size_t>(j + half) + 1] =
        initial[static_cast<std::size_t>(j + r)];
  }
  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n + 2, 0.0);

  const double dt = 0.5;
  const long steps = std::lround(t_final / dt);
  const int eta_r = static_cast<int>(spec.eta * r);
  const double t1 = spec.theta1 * r * r, t2 = spec.theta2 * r * r;
  const double t3 = spec.theta3 * r * r, t4 = spec.theta4 * r * r;

  double sup_minus = 0.0;
  double inf_plus = std::numeric_limits<double>::infinity();
  auto observe = [&](double t) {
    if (t >= t1 && t <= t2) {
      for (int j = -eta_r; j <= eta_r; ++j) {
        sup_minus =
            std::max(sup_minus, u[static_cast<std::size_t>(j + half) + 1]);
      }
    }
    if (t >= t3 && t <= t4) {
      for (int j = -eta_r; j <= eta_r; ++j) {
        inf_plus =
            std::min(inf_plus, u[static_cast<std::size_t>(j + half) + 1]);
      }
    }
  };

  double* uc = u.data() + 1;
  double* s = stage.data() + 1;
  for (long step = 1; step <= steps; ++step) {
    kernels::half_laplacian(uc, k1.data(), n);
    kernels::add_scaled(uc, k1.data(), 0.5 * dt, s, n);
    kernels::half_laplacian(s, k2.data(), n);
    kernels::add_scaled(uc, k2.data(), 0.5 * dt, s, n);
    kernels::half_laplacian(s, k3.data(), n);
    kernels::add_scaled(uc, k3.data(), dt, s, n);
    kernels::half_laplacian(s, k4.data(), n);
    kernels::rk4_combine(uc, k1.data(), k2.data(), k3.data(), k4.data(), dt,
                         n);
    observe(static_cast<double>(step) * dt);
  }

  HarnackTrial trial;
  trial.sup_q_minus = sup_minus;
  trial.inf_q_plus = inf_plus;
  trial.excluded = !(inf_plus > 0.0) || !std::isfinite(inf_plus);
  trial.ratio = trial.excluded ? 0.0 : sup_minus / inf_plus;
  return trial;
}

HarnackReport harnack_trials(const CylinderSpec& spec, int trials,
                             std::uint64_t seed) {
  HarnackReport report;
  report.spec = spec;
  report.c_empirical = 0.0;
  report.excluded = 0;

  const std::size_t width = static_cast<std::size_t>(2 * spec.r + 1);
  std::vector<std::vector<double>> initials;
  std::vector<double> delta(width, 0.0);
  delta[width / 2] = 1.0;
  initials.push_back(delta);
  initials.push_back(std::vector<double>(width, 1.0));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 2; i < trials; ++i) {
    std::vector<double> v(width);
    for (double& x : v) x = unif(rng);
    initials.push_back(std::move(v));
  }

  for (const auto& v : initials) {
    HarnackTrial trial = harnack_ratio(v, spec);
    if (trial.excluded) {
      ++report.excluded;
    } else {
      report.c_empirical = std::max(report.c_empirical, trial.ratio);
    }
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace kpp::harnack
