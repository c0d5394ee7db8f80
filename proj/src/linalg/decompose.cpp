#include "duality/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace duality {

namespace {

// Index of the largest-magnitude entry; among entries within a relative 1e-9
// of the maximum the first one wins, so near-ties resolve the same way every run.
Index pivot_entry(const Eigen::Ref<const Vector>& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= peak * (1.0 - 1e-9)) return i;
  return 0;
}

void check_rank_request(std::optional<Index> q, Index n, Index p) {
  if (!q) return;
  if (*q < 0 || *q > std::min(n, p))
    throw Error(Errc::invalid_argument, "requested rank " + std::to_string(*q) +
                                            " is outside [0, " +
                                            std::to_string(std::min(n, p)) + "]");
}

std::vector<bool> tie_flags(const Vector& spectrum) {
  std::vector<bool> tied(static_cast<std::size_t>(spectrum.size()), false);
  for (Index i = 0; i + 1 < spectrum.size(); ++i)
    tied[static_cast<std::size_t>(i)] = (spectrum(i) - spectrum(i + 1)) < kTieTolerance * spectrum(i);
  return tied;
}

struct SvdParts {
  Matrix u;  // n-by-r, oriented
  Matrix t;  // k-by-r, oriented
  Vector s;  // r
  Index rank = 0;
  double inertia = 0.0;
};

// SVD of the doubly weighted matrix K X Hᵗ, truncated at the zero threshold.
SvdParts weighted_svd(const Matrix& scaled) {
  SvdParts out;
  if (scaled.size() == 0) {
    out.u = Matrix(scaled.rows(), 0);
    out.t = Matrix(scaled.cols(), 0);
    out.s = Vector(0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw Error(Errc::numerical, "singular value decomposition did not converge");
  const Vector& sv = svd.singularValues();
  if (!sv.allFinite()) throw Error(Errc::numerical, "singular values are not finite");

  out.inertia = sv.squaredNorm();
  const double top = sv.size() > 0 ? sv(0) * sv(0) : 0.0;
  const double cutoff = kZeroEigenvalueTolerance * std::max(top, 1.0);
  Index r = 0;
  while (r < sv.size() && sv(r) * sv(r) > cutoff) ++r;

  out.rank = r;
  out.s = sv.head(r);
  out.u = svd.matrixU().leftCols(r);
  out.t = svd.matrixV().leftCols(r);
  return out;
}

void orient_by(Matrix& reference, Matrix& partner) {
  for (Index j = 0; j < reference.cols(); ++j) {
    if (reference(pivot_entry(reference.col(j)), j) < 0.0) {
      reference.col(j) *= -1.0;
      partner.col(j) *= -1.0;
    }
  }
}

Decomposition assemble_common(SvdParts& parts, std::optional<Index> rank_request) {
  Decomposition d;
  d.rank = parts.rank;
  d.spectrum = parts.s.array().square().matrix();
  d.inertia = parts.inertia;
  d.tied_with_next = tie_flags(d.spectrum);
  const Index keep = rank_request ? std::min(*rank_request, parts.rank) : parts.rank;
  d.singular_values = parts.s.head(keep);
  d.eigenvalues = d.spectrum.head(keep);
  return d;
}

}  // namespace

Decomposition decompose(const Triple& t, std::optional<Index> rank_request) {
  const Matrix& x = t.data();
  const Metric& q = t.variable_metric();
  const Metric& dw = t.observation_weights();
  check_rank_request(rank_request, t.observations(), t.variables());

  // K X Hᵗ = K (H Xᵗ)ᵗ
  const Matrix scaled = dw.factor_apply(q.factor_apply(x.transpose()).transpose());
  SvdParts parts = weighted_svd(scaled);
  orient_by(parts.t, parts.u);

  Decomposition d = assemble_common(parts, rank_request);
  const Index keep = d.retained();
  d.axis_basis = q.factor_solve(parts.t.leftCols(keep));
  d.component_basis = dw.factor_solve(parts.u.leftCols(keep));
  d.principal_axes = d.axis_basis * d.singular_values.asDiagonal();
  d.principal_components = d.component_basis * d.singular_values.asDiagonal();
  return d;
}

Decomposition decompose_semidefinite(const Matrix& data, const Matrix& metric_factor,
                                     const Metric& observation_weights,
                                     std::optional<Index> rank_request) {
  if (metric_factor.cols() != data.cols())
    throw Error(Errc::dimension_mismatch, "metric factor must have one column per variable");
  if (observation_weights.size() != data.rows())
    throw Error(Errc::dimension_mismatch, "observation weights do not match data rows");
  check_rank_request(rank_request, data.rows(), data.cols());

  const Matrix scaled = observation_weights.factor_apply(data * metric_factor.transpose());
  SvdParts parts = weighted_svd(scaled);

  Decomposition d = assemble_common(parts, rank_request);
  const Index keep = d.retained();
  d.component_basis = observation_weights.factor_solve(parts.u.leftCols(keep));
  // A = Xᵗ D L, Z = A S⁻¹
  d.principal_axes = observation_weights.cross(data, d.component_basis);
  d.axis_basis = d.principal_axes * d.singular_values.cwiseInverse().asDiagonal();
  for (Index j = 0; j < keep; ++j) {
    if (d.axis_basis(pivot_entry(d.axis_basis.col(j)), j) < 0.0) {
      d.axis_basis.col(j) *= -1.0;
      d.principal_axes.col(j) *= -1.0;
      d.component_basis.col(j) *= -1.0;
    }
  }
  d.principal_components = d.component_basis * d.singular_values.asDiagonal();
  return d;
}

TransitionResiduals transition_check(const Triple& t, const Decomposition& d) {
  TransitionResiduals r;
  if (d.retained() == 0) return r;
  const Matrix xqz = t.data() * t.variable_metric().apply(d.axis_basis);
  const Matrix xtdl = t.observation_weights().cross(t.data(), d.component_basis);
  r.components = (xqz - d.principal_components).cwiseAbs().maxCoeff();
  r.axes = (xtdl - d.principal_axes).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace duality
