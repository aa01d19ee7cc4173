#include "kpp/kernels.hpp"

#include <stdexcept>

namespace kpp::kernels {

namespace {

struct Table {
  void (*lattice_rhs)(const double*, const double*, double*, std::size_t);
  void (*linear_rhs)(const double*, const double*, double*, std::size_t);
  void (*half_laplacian)(const double*, double*, std::size_t);
  void (*add_scaled)(const double*, const double*, double, double*,
                     std::size_t);
  void (*rk4_combine)(double*, const double*, const double*, const double*,
                      const double*, double, std::size_t);
  double (*max_abs)(const double*, std::size_t);
};

constexpr Table kScalarTable = {
    &scalar::lattice_rhs, &scalar::linear_rhs, &scalar::half_laplacian,
    &scalar::add_scaled,  &scalar::rk4_combine, &scalar::max_abs};

#ifdef KPP_BUILD_AVX2
constexpr Table kAvx2Table = {
    &avx2::lattice_rhs, &avx2::linear_rhs, &avx2::half_laplacian,
    &avx2::add_scaled,  &avx2::rk4_combine, &avx2::max_abs};
#endif

#ifdef KPP_BUILD_NEON
constexpr Table kNeonTable = {
    &neon::lattice_rhs, &neon::linear_rhs, &neon::half_laplacian,
    &neon::add_scaled,  &neon::rk4_combine, &neon::max_abs};
#endif

Backend detect_backend() noexcept {
#ifdef KPP_BUILD_AVX2
  if (__builtin_cpu_supports("avx2")) {
    return Backend::avx2;
  }
#endif
#ifdef KPP_BUILD_NEON
  return Backend::neon;
#endif
  return Backend::scalar;
}

const Table& table_for(Backend b) {
  switch (b) {
#ifdef KPP_BUILD_AVX2
    case Backend::avx2:
      return kAvx2Table;
#endif
#ifdef KPP_BUILD_NEON
    case Backend::neon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

Backend g_backend = detect_backend();
const Table* g_table = &table_for(g_backend);

}  // namespace

Backend active_backend() noexcept { return g_backend; }

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef KPP_BUILD_AVX2
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#ifdef KPP_BUILD_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available on this host");
  }
  g_backend = b;
  g_table = &table_for(b);
}

void lattice_rhs(const double* u, const double* a, double* out,
                 std::size_t n) {
  g_table->lattice_rhs(u, a, out, n);
}

void linear_rhs(const double* u, const double* a, double* out, std::size_t n) {
  g_table->linear_rhs(u, a, out, n);
}

void half_laplacian(const double* u, double* out, std::size_t n) {
  g_table->half_laplacian(u, out, n);
}

void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n) {
  g_table->add_scaled(u, k, h, out, n);
}

void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt,
                 std::size_t n) {
  g_table->rk4_combine(u, k1, k2, k3, k4, dt, n);
}

double max_abs(const double* x, std::size_t n) {
  return g_table->max_abs(x, n);
}

}  // namespace kpp::kernels
