#include "kpp/heat_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "kpp/errors.hpp"

namespace kpp::heat_kernel {

namespace {

constexpr double kRescaleThreshold = 1e250;
constexpr double kRescaleFactor = 1e-250;

int miller_start_order(double t, int max_order) {
  double m0 = std::max(static_cast<double>(max_order), t);
  return static_cast<int>(m0) + 40 + static_cast<int>(2.0 * std::sqrt(m0));
}

}  // namespace

std::vector<double> scaled_bessel_row(double t, int max_order) {
  if (t < 0.0) throw std::domain_error("t must be >= 0");
  if (max_order < 0) throw std::domain_error("order must be >= 0");
  std::vector<double> row(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (t == 0.0) {
    row[0] = 1.0;
    return row;
  }

  const int start = miller_start_order(t, max_order);
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[static_cast<std::size_t>(start) + 1] = 0.0;
  f[static_cast<std::size_t>(start)] = 1e-280;
  double sum = 2.0 * f[static_cast<std::size_t>(start)];
  for (int k = start; k >= 1; --k) {
    double next = f[static_cast<std::size_t>(k) + 1] +
                  (2.0 * k / t) * f[static_cast<std::size_t>(k)];
    f[static_cast<std::size_t>(k) - 1] = next;
    sum += (k == 1) ? next : 2.0 * next;
    if (next > kRescaleThreshold) {
      for (int m = k - 1; m <= start + 1; ++m) {
        f[static_cast<std::size_t>(m)] *= kRescaleFactor;
      }
      sum *= kRescaleFactor;
    }
  }
  // Normalization: sum_k e^{-t} I_k(t) over all of Z equals 1.
  for (int k = 0; k <= max_order && k <= start; ++k) {
    row[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)] / sum;
  }
  return row;
}

double bessel_i_scaled(int order, double t) {
  if (order < 0) throw std::domain_error("order must be >= 0");
  return scaled_bessel_row(t, order)[static_cast<std::size_t>(order)];
}

double bessel_i(int order, double t) {
  if (t == 0.0) return order == 0 ? 1.0 : 0.0;
  return bessel_i_scaled(order, t) * std::exp(t);
}

double kernel_h(double t, int j) {
  if (!(t > 0.0)) throw std::domain_error("t must be > 0");
  return bessel_i_scaled(std::abs(j), t);
}

int kernel_support_radius(double t) {
  return static_cast<int>(std::ceil(t + 12.0 * std::sqrt(t + 1.0) + 16.0));
}

double f_estimate(double t, int j) {
  if (!(t > 0.0)) throw std::domain_error("t must be > 0");
  const double inv_sqrt_2pi = 0.3989422804014326779;
  if (j == 0) {
    return inv_sqrt_2pi / std::pow(1.0 + t * t, 0.25);
  }
  double aj = std::abs(static_cast<double>(j));
  double z = t / aj;
  double s = std::sqrt(1.0 + z * z);
  double zeta = s + std::log(z / (1.0 + s));
  return inv_sqrt_2pi * std::exp(-t + aj * zeta) /
         std::pow(1.0 + t * t + static_cast<double>(j) * j, 0.25);
}

namespace {

/// Propagator row for the growth semigroup S(tau) = e^tau e^{tau Delta}:
/// p[d] = e^{-tau} I_d(2 tau), so sum_d p[d] = e^tau.
std::vector<double> propagator_row(double tau, int radius) {
  std::vector<double> row = scaled_bessel_row(2.0 * tau, radius);
  double scale = std::exp(tau);
  for (double& v : row) v *= scale;
  return row;
}

void convolve(const std::vector<double>& row, const LatticeState& shape,
              const std::vector<double>& u, std::vector<double>& out) {
  const int n = static_cast<int>(u.size());
  const int r = static_cast<int>(row.size()) - 1;
  const double gl = shape.ghost_left();
  const double gr = shape.ghost_right();
  for (int i = 0; i < n; ++i) {
    double acc = row[0] * u[static_cast<std::size_t>(i)];
    for (int d = 1; d <= r; ++d) {
      double left = (i - d >= 0) ? u[static_cast<std::size_t>(i - d)] : gl;
      double right = (i + d < n) ? u[static_cast<std::size_t>(i + d)] : gr;
      acc += row[static_cast<std::size_t>(d)] * (left + right);
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
}

}  // namespace

LatticeState mild_solution_step(const LatticeState& state, double t_from,
                                double t_to, const MediumProfile& medium,
                                const NonlinearityModel& model,
                                double quad_step) {
  if (!(t_to > t_from)) throw std::domain_error("t_to must exceed t_from");
  if (!(quad_step > 0.0 && quad_step <= 0.05)) {
    throw std::domain_error("quad_step must lie in (0, 0.05]");
  }
  const int n = static_cast<int>(state.size());
  const int steps = std::max(
      1, static_cast<int>(std::ceil((t_to - t_from) / quad_step)));
  const double h = (t_to - t_from) / steps;
  const int radius = kernel_support_radius(2.0 * h);
  if (2 * radius >= n) {
    throw SimulationError(
        "mild step: window too narrow for the kernel support");
  }

  const std::vector<double> row = propagator_row(h, radius);
  const std::vector<double> a = medium.sample(state.j_min, state.j_max);

  auto eval_g = [&](const std::vector<double>& u, std::vector<double>& g) {
    for (int i = 0; i < n; ++i) {
      int j = state.j_min + i;
      double ui = u[static_cast<std::size_t>(i)];
      g[static_cast<std::size_t>(i)] =
          (1.0 - model.f(medium, j, ui)) * ui;
    }
  };

  std::vector<double> u = state.values;
  std::vector<double> g(state.size()), pu(state.size()), pg(state.size());
  std::vector<double> unew(state.size());

  for (int m = 0; m < steps; ++m) {
    eval_g(u, g);
    convolve(row, state, u, pu);
    convolve(row, state, g, pg);
    // u_{m+1} = P_h u_m - (h/2)(P_h g_m + g_{m+1}); the implicit
    // endpoint is resolved by Picard iteration (contraction factor ~ h/2).
    for (int i = 0; i < n; ++i) {
      unew[static_cast<std::size_t>(i)] = pu[static_cast<std::size_t>(i)] -
          0.5 * h * pg[static_cast<std::size_t>(i)];
    }
    std::vector<double> base = unew;
    for (int pass = 0; pass < 4; ++pass) {
      for (int i = 0; i < n; ++i) {
        int j = state.j_min + i;
        double ui = unew[static_cast<std::size_t>(i)];
        double gi = (1.0 - model.f(medium, j, ui)) * ui;
        unew[static_cast<std::size_t>(i)] =
            base[static_cast<std::size_t>(i)] - 0.5 * h * gi;
      }
    }
    u.swap(unew);
  }

  LatticeState out = state;
  out.t = t_to;
  out.values = std::move(u);
  return out;
}

}  // namespace kpp::heat_kernel
