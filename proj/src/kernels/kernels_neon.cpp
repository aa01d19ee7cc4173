#include "kpp/kernels.hpp"

#ifdef KPP_BUILD_NEON

#include <arm_neon.h>

#include <cmath>

// Mirrors the scalar association exactly (vmulq + vaddq, no fused ops).

namespace kpp::kernels::neon {

namespace {
constexpr std::size_t kLanes = 2;
}

void lattice_rhs(const double* u, const double* a, double* out,
                 std::size_t n) {
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t um = vld1q_f64(u + i - 1);
    float64x2_t uc = vld1q_f64(u + i);
    float64x2_t up = vld1q_f64(u + i + 1);
    float64x2_t ai = vld1q_f64(a + i);
    float64x2_t lap = vaddq_f64(vsubq_f64(up, vmulq_f64(two, uc)), um);
    float64x2_t react = vmulq_f64(vsubq_f64(ai, uc), uc);
    vst1q_f64(out + i, vaddq_f64(lap, react));
  }
  for (; i < n; ++i) {
    out[i] = u[i + 1] - 2.0 * u[i] + u[i - 1] + (a[i] - u[i]) * u[i];
  }
}

void linear_rhs(const double* u, const double* a, double* out, std::size_t n) {
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t um = vld1q_f64(u + i - 1);
    float64x2_t uc = vld1q_f64(u + i);
    float64x2_t up = vld1q_f64(u + i + 1);
    float64x2_t ai = vld1q_f64(a + i);
    float64x2_t lap = vaddq_f64(vsubq_f64(up, vmulq_f64(two, uc)), um);
    vst1q_f64(out + i, vaddq_f64(lap, vmulq_f64(ai, uc)));
  }
  for (; i < n; ++i) {
    out[i] = u[i + 1] - 2.0 * u[i] + u[i - 1] + a[i] * u[i];
  }
}

void half_laplacian(const double* u, double* out, std::size_t n) {
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t um = vld1q_f64(u + i - 1);
    float64x2_t uc = vld1q_f64(u + i);
    float64x2_t up = vld1q_f64(u + i + 1);
    float64x2_t lap = vaddq_f64(vsubq_f64(up, vmulq_f64(two, uc)), um);
    vst1q_f64(out + i, vmulq_f64(half, lap));
  }
  for (; i < n; ++i) {
    out[i] = 0.5 * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
  }
}

void add_scaled(const double* u, const double* k, double h, double* out,
                std::size_t n) {
  const float64x2_t hv = vdupq_n_f64(h);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t uv = vld1q_f64(u + i);
    float64x2_t kv = vld1q_f64(k + i);
    vst1q_f64(out + i, vaddq_f64(uv, vmulq_f64(hv, kv)));
  }
  for (; i < n; ++i) {
    out[i] = u[i] + h * k[i];
  }
}

void rk4_combine(double* u, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt,
                 std::size_t n) {
  const double w = dt / 6.0;
  const float64x2_t wv = vdupq_n_f64(w);
  const float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t s =
        vaddq_f64(vld1q_f64(k1 + i), vmulq_f64(two, vld1q_f64(k2 + i)));
    s = vaddq_f64(s, vmulq_f64(two, vld1q_f64(k3 + i)));
    s = vaddq_f64(s, vld1q_f64(k4 + i));
    float64x2_t uv = vld1q_f64(u + i);
    vst1q_f64(u + i, vaddq_f64(uv, vmulq_f64(wv, s)));
  }
  for (; i < n; ++i) {
    u[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

double max_abs(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  }
  double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) {
    m = std::max(m, std::fabs(x[i]));
  }
  return m;
}

}  // namespace kpp::kernels::neon

#endif  // KPP_BUILD_NEON
