#include <map>
#include <string>

#include "common.hpp"

namespace duality {

GroupCoding GroupCoding::from_labels(const std::vector<std::string>& per_observation) {
  std::map<std::string, Index> index;
  std::vector<std::string> labels;
  std::vector<Index> code;
  code.reserve(per_observation.size());
  for (const auto& l : per_observation) {
    auto [it, inserted] = index.try_emplace(l, static_cast<Index>(labels.size()));
    if (inserted) labels.push_back(l);
    code.push_back(it->second);
  }
  Matrix y = Matrix::Zero(static_cast<Index>(code.size()), static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < code.size(); ++i) y(static_cast<Index>(i), code[i]) = 1.0;
  return from_indicator(y, labels);
}

GroupCoding GroupCoding::from_indicator(const Matrix& indicator,
                                        std::vector<std::string> group_labels) {
  if (indicator.size() == 0) throw Error(Errc::invalid_argument, "group coding is empty");
  for (Index i = 0; i < indicator.rows(); ++i) {
    Index ones = 0;
    for (Index k = 0; k < indicator.cols(); ++k) {
      const double v = indicator(i, k);
      if (v != 0.0 && v != 1.0)
        throw Error(Errc::invalid_argument, "group coding must be zero/one", i);
      ones += v == 1.0;
    }
    if (ones != 1)
      throw Error(Errc::invalid_argument,
                  "observation " + std::to_string(i) + " must belong to exactly one group", i);
  }
  for (Index k = 0; k < indicator.cols(); ++k)
    if (indicator.col(k).sum() == 0.0)
      throw Error(Errc::invalid_argument, "group " + std::to_string(k) + " is empty", k);
  if (group_labels.empty())
    for (Index k = 0; k < indicator.cols(); ++k) group_labels.push_back("g" + std::to_string(k + 1));
  if (static_cast<Index>(group_labels.size()) != indicator.cols())
    throw Error(Errc::dimension_mismatch, "one label per group is required");
  GroupCoding g;
  g.indicator_ = indicator;
  g.labels_ = std::move(group_labels);
  return g;
}

MethodResult lda(const Matrix& x, const GroupCoding& groups, const std::optional<Vector>& weights,
                 std::optional<Index> rank) {
  if (groups.observations() != x.rows())
    throw Error(Errc::dimension_mismatch, "group coding has " +
                                              std::to_string(groups.observations()) +
                                              " rows, data has " + std::to_string(x.rows()));
  if (groups.groups() < 2)
    throw Error(Errc::invalid_argument, "discriminant analysis needs at least two groups");

  const Metric d = observation_weights(x.rows(), weights);
  const Matrix xc = center_columns(x, d);
  const Matrix& y = groups.indicator();

  const Matrix delta_full = d.gram(y);  // Yᵗ D Y, diagonal for a valid coding
  const Vector group_weights = delta_full.diagonal();
  // Yᵗ D X = Δ A
  const Matrix means = group_weights.cwiseInverse().asDiagonal() * d.cross(y, xc);

  LdaExtras ex;
  ex.group_means = means;
  ex.total = d.gram(xc);
  ex.between = means.transpose() * group_weights.asDiagonal() * means;
  ex.within = d.gram(xc - y * means);
  const double tscale = ex.total.cwiseAbs().maxCoeff();
  ex.huyghens_residual =
      tscale > 0.0 ? (ex.total - ex.between - ex.within).cwiseAbs().maxCoeff() / tscale : 0.0;

  const Metric total_metric = detail::covariance_metric(ex.total, "total covariance T");
  const Matrix t_inv = total_metric.inverse();
  const Triple triple(means, Metric::dense(t_inv, "T^-1"),
                      Metric::diagonal(group_weights, "group weights"));
  Decomposition dec = decompose(triple, rank);

  // With VQ = B T⁻¹ and Zᵗ T⁻¹ Z = I, a = T⁻¹ Z solves T⁻¹ B a = λ a, aᵗ T a = 1.
  ex.discriminant_vectors = t_inv * dec.axis_basis;
  ex.discriminating_ratios = dec.eigenvalues;
  ex.group_coords = dec.principal_components;

  Matrix rows = xc * ex.discriminant_vectors;
  Matrix cols = ex.discriminant_vectors;
  return detail::finish(std::move(dec), std::move(rows), std::move(cols), std::move(ex));
}

}  // namespace duality
