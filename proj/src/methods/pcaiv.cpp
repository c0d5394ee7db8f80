#include <algorithm>
#include <string>

#include "common.hpp"

namespace duality {

namespace {

Index weighted_rank(const Matrix& centered, const Metric& d) {
  if (centered.size() == 0) return 0;
  const Matrix scaled = d.factor_apply(centered);
  Eigen::BDCSVD<Matrix> svd(scaled);
  const Vector& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) * s(0) : 0.0;
  Index r = 0;
  while (r < s.size() && s(r) * s(r) > kZeroEigenvalueTolerance * std::max(top, 1.0)) ++r;
  return r;
}

}  // namespace

MethodResult pcaiv(const Matrix& x, const Matrix& y, const PcaivOptions& options) {
  if (x.rows() != y.rows())
    throw Error(Errc::dimension_mismatch, "explanatory and response tables differ in rows (" +
                                              std::to_string(x.rows()) + " vs " +
                                              std::to_string(y.rows()) + ")");
  const Metric d = observation_weights(x.rows(), options.weights);
  const Matrix xc = center_columns(x, d);
  const Matrix yc = center_columns(y, d);

  const Metric response = options.response_metric
                              ? Metric::dense(*options.response_metric, "response metric")
                              : Metric::identity(y.cols());
  if (response.size() != y.cols())
    throw Error(Errc::dimension_mismatch, "response metric does not match response columns");

  const Metric sxx = detail::covariance_metric(d.gram(xc), "explanatory covariance Sxx");
  const Matrix sxy = d.cross(xc, yc);
  const Matrix sxx_dense = sxx.to_dense();
  // Regression coefficients Sxx⁻¹ Sxy; R = coef Q coefᵗ = Gᵗ G with G = H_Q coefᵗ.
  const Matrix coefficients = sxx_dense.llt().solve(sxy);
  const Matrix factor = response.factor_apply(coefficients.transpose());

  if (options.rank) {
    const Index limit = std::min(weighted_rank(xc, d), weighted_rank(yc, d));
    if (*options.rank > limit)
      throw Error(Errc::invalid_argument, "rank " + std::to_string(*options.rank) +
                                              " exceeds min(rank X, rank Y) = " +
                                              std::to_string(limit));
  }

  Decomposition dec = decompose_semidefinite(xc, factor, d, options.rank);

  PcaivExtras ex;
  ex.metric = factor.transpose() * factor;
  ex.fitted_operator = d.apply((xc * ex.metric * xc.transpose()).transpose()).transpose();
  const Matrix rz = ex.metric * dec.axis_basis;
  ex.constrained_metric = rz * rz.transpose();

  Matrix rows = dec.principal_components;
  Matrix cols = dec.principal_axes;
  return detail::finish(std::move(dec), std::move(rows), std::move(cols), std::move(ex));
}

}  // namespace duality
