#include "impl.hpp"

namespace duality::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
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

}  // namespace duality::kernels::scalar
