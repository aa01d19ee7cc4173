#pragma once

#include <cstddef>
#include <string_view>

namespace kpp::kernels {

/// Inner loops of the lattice integrators. Every kernel has a scalar
/// reference implementation plus SIMD variants selected once at startup
/// from CPU features; the variants are element-wise identical to the
/// reference (no FMA contraction, no reassociation), so equivalence tests
/// compare bitwise.
///
/// Stencil kernels read one halo cell on each side: u[-1] and u[n] must be
/// addressable and hold the boundary ghost values.

enum class Backend { scalar, avx2, neon };

Backend active_backend() noexcept;
bool backend_available(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

/// Test hook: pin the dispatch table to one backend. Throws
/// std::invalid_argument if the backend is not available on this machine.
void force_backend(Backend b);

/// out[i] = u[i+1] - 2 u[i] + u[i-1] + (a[i] - u[i]) u[i]
void lattice_rhs(const double* u, const double* a, double* out, std::size_t n);

/// out[i] = u[i+1] - 2 u[i] + u[i-1] + a[i] u[i]
void linear_rhs(const double* u, const double* a, double* out, std::size_t n);

/// out[i] = (u[i+1] - 2 u[i] + u[i-1]) / 2   (graph heat equation, m(x) = 2)
void half_laplacian(const double* u, double* out, std::size_t n);

/// out[i] = u[i] + h k[i]
void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n);

/// u[i] += dt/6 (k1[i] + 2 k2[i] + 2 k3[i] + k4[i])
void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, std::size_t n);

double max_abs(const double* x, std::size_t n);

namespace scalar {
void lattice_rhs(const double* u, const double* a, double* out, std::size_t n);
void linear_rhs(const double* u, const double* a, double* out, std::size_t n);
void half_laplacian(const double* u, double* out, std::size_t n);
void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n);
void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace scalar

#ifdef KPP_BUILD_AVX2
namespace avx2 {
void lattice_rhs(const double* u, const double* a, double* out, std::size_t n);
void linear_rhs(const double* u, const double* a, double* out, std::size_t n);
void half_laplacian(const double* u, double* out, std::size_t n);
void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n);
void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace avx2
#endif

#ifdef KPP_BUILD_NEON
namespace neon {
void lattice_rhs(const double* u, const double* a, double* out, std::size_t n);
void linear_rhs(const double* u, const double* a, double* out, std::size_t n);
void half_laplacian(const double* u, double* out, std::size_t n);
void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n);
void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace neon
#endif

}  // namespace kpp::kernels
