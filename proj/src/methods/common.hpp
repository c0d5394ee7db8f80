#pragma once

#include "duality/methods.hpp"

namespace duality::detail {

inline MethodResult finish(Decomposition d, Matrix rows, Matrix cols, MethodExtras extras = {}) {
  MethodResult r;
  r.scree = make_scree(d.spectrum);
  r.decomposition = std::move(d);
  r.row_coords = std::move(rows);
  r.col_coords = std::move(cols);
  r.extras = std::move(extras);
  return r;
}

/// Cholesky-backed metric for a covariance block; a failed factorization is
/// reported as Errc::singular with a hint to reduce the dimension first.
Metric covariance_metric(const Matrix& s, const std::string& what);

}  // namespace duality::detail
