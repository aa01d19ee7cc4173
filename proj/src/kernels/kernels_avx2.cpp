#include "kpp/kernels.hpp"

#ifdef KPP_BUILD_AVX2

#include <immintrin.h>

#include <cmath>

// Intentionally mul+add (no FMA): results stay bitwise identical to the
// scalar reference, which the equivalence tests rely on.

namespace kpp::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}
}  // namespace

void lattice_rhs(const double* u, const double* a, double* out,
                 std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d um = _mm256_loadu_pd(u + i - 1);
    __m256d uc = _mm256_loadu_pd(u + i);
    __m256d up = _mm256_loadu_pd(u + i + 1);
    __m256d ai = _mm256_loadu_pd(a + i);
    __m256d lap = _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um);
    __m256d react = _mm256_mul_pd(_mm256_sub_pd(ai, uc), uc);
    _mm256_storeu_pd(out + i, _mm256_add_pd(lap, react));
  }
  for (; i < n; ++i) {
    out[i] = u[i + 1] - 2.0 * u[i] + u[i - 1] + (a[i] - u[i]) * u[i];
  }
}

void linear_rhs(const double* u, const double* a, double* out, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d um = _mm256_loadu_pd(u + i - 1);
    __m256d uc = _mm256_loadu_pd(u + i);
    __m256d up = _mm256_loadu_pd(u + i + 1);
    __m256d ai = _mm256_loadu_pd(a + i);
    __m256d lap = _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um);
    _mm256_storeu_pd(out + i, _mm256_add_pd(lap, _mm256_mul_pd(ai, uc)));
  }
  for (; i < n; ++i) {
    out[i] = u[i + 1] - 2.0 * u[i] + u[i - 1] + a[i] * u[i];
  }
}

void half_laplacian(const double* u, double* out, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d um = _mm256_loadu_pd(u + i - 1);
    __m256d uc = _mm256_loadu_pd(u + i);
    __m256d up = _mm256_loadu_pd(u + i + 1);
    __m256d lap = _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, lap));
  }
  for (; i < n; ++i) {
    out[i] = 0.5 * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
  }
}

void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d uv = _mm256_loadu_pd(u + i);
    __m256d kv = _mm256_loadu_pd(k + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(uv, _mm256_mul_pd(hv, kv)));
  }
  for (; i < n; ++i) {
    out[i] = u[i] + h * k[i];
  }
}

void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt,
                 std::size_t n) {
  const double w = dt / 6.0;
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    // Same association as the scalar loop: ((k1 + 2k2) + 2k3) + k4.
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + i),
                              _mm256_mul_pd(two, _mm256_loadu_pd(k2 + i)));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(k3 + i)));
    s = _mm256_add_pd(s, _mm256_loadu_pd(k4 + i));
    __m256d uv = _mm256_loadu_pd(u + i);
    _mm256_storeu_pd(u + i, _mm256_add_pd(uv, _mm256_mul_pd(wv, s)));
  }
  for (; i < n; ++i) {
    u[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d v = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i));
    acc = _mm256_max_pd(acc, v);
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    m = std::max(m, std::fabs(x[i]));
  }
  return m;
}

}  // namespace kpp::kernels::avx2

#endif  // KPP_BUILD_AVX2
