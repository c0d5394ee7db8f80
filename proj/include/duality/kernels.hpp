#pragma once

// Data-parallel inner loops shared by the linear algebra. Each kernel has a
// scalar reference version and, where the target allows, a vector version;
// the vector version is picked once at startup from the CPU feature bits.

#include <cstddef>
#include <span>
#include <string_view>

namespace duality::kernels {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*weighted_dot)(const double* a, const double* b, const double* w,
                         std::size_t n);
  // out[j + k*p] = sum_i w[i] x[i + j*n] x[i + k*n]; x is column-major n-by-p.
  void (*weighted_gram)(const double* x, std::size_t n, std::size_t p,
                        const double* w, double* out);
};

const KernelTable& scalar_table() noexcept;

/// Table for `b`, or nullptr when this build or this CPU cannot run it.
const KernelTable* table_for(Backend b) noexcept;

/// The fastest table usable on this machine. Resolved once, never changes.
const KernelTable& active() noexcept;

std::string_view backend_name(Backend b) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double weighted_dot(std::span<const double> a, std::span<const double> b,
                           std::span<const double> w) {
  return active().weighted_dot(a.data(), b.data(), w.data(), a.size());
}

}  // namespace duality::kernels
