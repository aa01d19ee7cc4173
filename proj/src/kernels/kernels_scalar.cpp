#include "kpp/kernels.hpp"

#include <cmath>

namespace kpp::kernels::scalar {

void lattice_rhs(const double* u, const double* a, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = u[i + 1] - 2.0 * u[i] + u[i - 1] + (a[i] - u[i]) * u[i];
  }
}

void linear_rhs(const double* u, const double* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = u[i + 1] - 2.0 * u[i] + u[i - 1] + a[i] * u[i];
  }
}

void half_laplacian(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = 0.5 * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
  }
}

void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = u[i] + h * k[i];
  }
}

void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt,
                 std::size_t n) {
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, std::fabs(x[i]));
  }
  return m;
}

}  // namespace kpp::kernels::scalar
