#pragma once

#include <string_view>

#include "duality/types.hpp"

namespace duality {

/// Tolerance for accepting a nearly symmetric matrix, relative to its largest entry.
inline constexpr double kSymmetryTolerance = 1e-8;

/// A symmetric positive-definite matrix used as an inner product, stored together
/// with its upper Cholesky factor H (HᵗH = M). Diagonal matrices keep only their
/// diagonal and use square roots instead of a full factorization.
class Metric {
 public:
  /// Throws Errc::not_positive_definite naming the first nonpositive weight.
  static Metric diagonal(Vector weights, std::string_view name = "metric");
  /// Symmetrizes (M + Mᵗ)/2 when the asymmetry is within kSymmetryTolerance,
  /// rejects otherwise, then factors. Exactly diagonal input takes the diagonal path.
  static Metric dense(const Matrix& m, std::string_view name = "metric");
  static Metric identity(Index n);
  static Metric uniform(Index n);  // (1/n) I

  Index size() const noexcept { return size_; }
  bool is_diagonal() const noexcept { return diagonal_; }
  /// Only meaningful for diagonal metrics.
  const Vector& weights() const noexcept { return weights_; }

  Matrix to_dense() const;
  Matrix apply(const Matrix& x) const;         // M x
  Matrix gram(const Matrix& x) const;          // xᵗ M x
  Matrix cross(const Matrix& x, const Matrix& y) const;  // xᵗ M y
  Matrix factor_apply(const Matrix& x) const;  // H x
  Matrix factor_solve(const Matrix& x) const;  // H⁻¹ x
  Matrix inverse() const;

 private:
  Metric() = default;

  Index size_ = 0;
  bool diagonal_ = true;
  Vector weights_;
  Matrix dense_;
  Matrix factor_;  // upper triangular, dense path only
};

/// Upper Cholesky factor H with HᵗH = a. A pivot at or below 1e-14 times the
/// largest diagonal entry is reported as Errc::not_positive_definite with its index.
Matrix cholesky_upper(const Matrix& a, std::string_view name = "matrix");

/// Returns (a + aᵗ)/2, or throws Errc::not_symmetric when the asymmetry exceeds
/// kSymmetryTolerance relative to the largest entry.
Matrix symmetrized(const Matrix& a, std::string_view name = "matrix");

}  // namespace duality
