#include <arm_neon.h>

#include "impl.hpp"

namespace duality::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vmulq_f64(vld1q_f64(w + i), vld1q_f64(a + i)), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vmulq_f64(vld1q_f64(w + i + 2), vld1q_f64(a + i + 2)),
                     vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

void weighted_gram(const double* x, std::size_t n, std::size_t p, const double* w,
                   double* out) {
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      const double s = weighted_dot(x + j * n, x + k * n, w, n);
      out[j + k * p] = s;
      out[k + j * p] = s;
    }
  }
}

}  // namespace duality::kernels::neon
