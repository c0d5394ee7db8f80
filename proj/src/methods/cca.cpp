#include <algorithm>
#include <cmath>
#include <string>

#include "common.hpp"

namespace duality {

MethodResult cca(const Matrix& x1, const Matrix& x2, const std::optional<Vector>& weights,
                 std::optional<Index> rank) {
  if (x1.rows() != x2.rows())
    throw Error(Errc::dimension_mismatch, "the two blocks differ in rows (" +
                                              std::to_string(x1.rows()) + " vs " +
                                              std::to_string(x2.rows()) + ")");
  const Metric d = observation_weights(x1.rows(), weights);
  const Matrix c1 = center_columns(x1, d);
  const Matrix c2 = center_columns(x2, d);

  const Metric s11 = detail::covariance_metric(d.gram(c1), "first block covariance");
  const Metric s22 = detail::covariance_metric(d.gram(c2), "second block covariance");
  const Matrix s11_inv = s11.inverse();
  const Matrix s22_inv = s22.inverse();
  const Matrix s21 = d.cross(c2, c1);

  const Index pairs = std::min(x1.cols(), x2.cols());
  const Triple cross(s21, Metric::dense(s11_inv, "S11^-1"), Metric::dense(s22_inv, "S22^-1"));
  Decomposition dec = decompose(cross, rank ? std::optional<Index>(std::min(*rank, pairs))
                                            : std::optional<Index>(pairs));

  CcaExtras ex;
  ex.canonical_correlations = Vector::Zero(pairs);
  for (Index k = 0; k < dec.spectrum.size() && k < pairs; ++k)
    ex.canonical_correlations(k) = std::sqrt(std::clamp(dec.spectrum(k), 0.0, 1.0));
  ex.first_coefficients = s11_inv * dec.axis_basis;
  ex.second_coefficients = s22_inv * dec.component_basis;

  Matrix merged(x1.rows(), x1.cols() + x2.cols());
  merged << c1, c2;
  Matrix block = Matrix::Zero(merged.cols(), merged.cols());
  block.topLeftCorner(x1.cols(), x1.cols()) = s11_inv;
  block.bottomRightCorner(x2.cols(), x2.cols()) = s22_inv;
  ex.merged_eigenvalues = decompose(Triple(merged, Metric::dense(block, "block metric"), d)).spectrum;

  Matrix rows = c1 * ex.first_coefficients;
  Matrix cols(x1.cols() + x2.cols(), ex.first_coefficients.cols());
  cols << ex.first_coefficients, ex.second_coefficients;
  return detail::finish(std::move(dec), std::move(rows), std::move(cols), std::move(ex));
}

}  // namespace duality
