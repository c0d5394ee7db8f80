#pragma once

// Raw-pointer entry points for each backend. Kept free of Eigen and other
// template-heavy headers: the AVX2 translation unit is compiled with
// -mavx2 -mfma and must not emit inline functions that other units could pick.

#include <cstddef>

namespace duality::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
void weighted_gram(const double* x, std::size_t n, std::size_t p, const double* w,
                   double* out);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
void weighted_gram(const double* x, std::size_t n, std::size_t p, const double* w,
                   double* out);
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
void weighted_gram(const double* x, std::size_t n, std::size_t p, const double* w,
                   double* out);
}  // namespace neon

}  // namespace duality::kernels
