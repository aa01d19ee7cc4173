#pragma once

#include <vector>

#include "kpp/lattice.hpp"
#include "kpp/medium.hpp"

namespace kpp::heat_kernel {

/// Modified Bessel function I_order(t), order >= 0, t >= 0. Computed by
/// Miller backward recurrence normalized with I_0 + 2 sum I_k = e^t.
/// Overflows (returns inf) for t beyond ~709; use the scaled form instead.
double bessel_i(int order, double t);

/// e^{-t} I_order(t), stable for all t >= 0.
double bessel_i_scaled(int order, double t);

/// One Miller pass: v[k] = e^{-t} I_k(t) for k = 0..max_order.
std::vector<double> scaled_bessel_row(double t, int max_order);

/// Heat kernel of the lattice semigroup e^{-tL}, L f(j) = f(j) -
/// (f(j+1)+f(j-1))/2: h_t(j) = e^{-t} I_|j|(t).
double kernel_h(double t, int j);

/// Offset beyond which h_t decays below ~1e-19; convolutions truncate here.
int kernel_support_radius(double t);

/// Two-branch kernel estimate F(t, j); the kernel satisfies
/// (1-eps) F <= h_t(j) <= (1+eps) F for t^2 + j^2 large.
double f_estimate(double t, int j);

/// Advances a state from t_from to t_to through the Duhamel representation
///   u(t) = e^{t-T} h_{2(t-T)} * u(T) - int_T^t e^{t-s} h_{2(t-s)} * g(s) ds,
/// g_j = (1 - f_j(u_j)) u_j, discretized by composite trapezoid with node
/// spacing <= quad_step. Serves as the independent oracle for the direct
/// integrator. Throws SimulationError if the kernel radius exceeds the
/// window (truncation would be visible).
LatticeState mild_solution_step(const LatticeState& state, double t_from,
                                double t_to, const MediumProfile& medium,
                                const NonlinearityModel& model,
                                double quad_step = 0.01);

}  // namespace kpp::heat_kernel
