#include <algorithm>
#include <cmath>
#include <string>

#include "duality/graph.hpp"

namespace duality {

namespace {

constexpr double kMuTieTolerance = 1e-9;

Index pivot_entry(const Eigen::Ref<const Vector>& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= peak * (1.0 - 1e-9)) return i;
  return 0;
}

GraphSpectrum connected_spectrum(const Graph& g, Index k) {
  const Index n = g.nodes();
  if (k < 1 || k >= n)
    throw Error(Errc::invalid_argument,
                "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n - 1) + "]");
  // D^{-1/2} (D − M) D^{-1/2} y = μ y with x = D^{-1/2} y, so xᵗ D x = yᵗ y.
  const Vector inv_sqrt = g.degrees().cwiseSqrt().cwiseInverse();
  Matrix normalized = inv_sqrt.asDiagonal() * g.laplacian() * inv_sqrt.asDiagonal();
  normalized = 0.5 * (normalized + normalized.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(normalized);
  if (es.info() != Eigen::Success)
    throw Error(Errc::numerical, "graph eigensolver did not converge");

  GraphSpectrum s;
  s.trivial_dropped = true;
  s.trivial_mu = es.eigenvalues()(0);
  s.all_mu = es.eigenvalues().tail(n - 1);
  s.mu = es.eigenvalues().segment(1, k);
  s.vectors = inv_sqrt.asDiagonal() * es.eigenvectors().middleCols(1, k);
  for (Index j = 0; j < k; ++j)
    if (s.vectors(pivot_entry(s.vectors.col(j)), j) < 0.0) s.vectors.col(j) *= -1.0;
  s.tied_with_next.assign(static_cast<std::size_t>(k), false);
  for (Index j = 0; j < k; ++j) {
    if (j + 1 < s.all_mu.size())
      s.tied_with_next[static_cast<std::size_t>(j)] =
          s.all_mu(j + 1) - s.all_mu(j) < kMuTieTolerance * std::max(1.0, s.all_mu(j + 1));
  }
  return s;
}

}  // namespace

GraphSpectrum spectrum(const Graph& g, Index k) {
  if (g.nodes() < 2) throw Error(Errc::invalid_argument, "graph needs at least two nodes");
  const auto comps = g.components();
  if (comps.size() != 1)
    throw Error(Errc::disconnected,
                "graph has " + std::to_string(comps.size()) +
                    " connected components; analyse them separately (per-component mode)");
  return connected_spectrum(g, k);
}

std::vector<ComponentSpectrum> spectrum_per_component(const Graph& g, Index k) {
  if (k < 1) throw Error(Errc::invalid_argument, "k must be at least 1");
  std::vector<ComponentSpectrum> out;
  for (auto& members : g.components()) {
    ComponentSpectrum cs;
    cs.nodes = members;
    if (members.size() >= 2) {
      const Graph sub = g.subgraph(members);
      cs.spectrum = connected_spectrum(sub, std::min<Index>(k, sub.nodes() - 1));
    }
    out.push_back(std::move(cs));
  }
  return out;
}

Matrix scaled_coordinates(const GraphSpectrum& s) {
  const Vector scale = (1.0 - s.mu.array()).abs().sqrt().matrix();
  return s.vectors * scale.asDiagonal();
}

Layout layout(const Graph& g) {
  if (g.nodes() < 3) throw Error(Errc::invalid_argument, "layout needs at least three nodes");
  const GraphSpectrum s = spectrum(g, 2);
  Layout out;
  out.mu = s.mu;
  out.coords = scaled_coordinates(s);
  out.degenerate = s.tied_with_next[0] || s.tied_with_next[1];
  return out;
}

MethodResult regress_on_covariates(const Graph& g, const Matrix& x, Index k,
                                   std::optional<Index> q) {
  if (x.rows() != g.nodes())
    throw Error(Errc::dimension_mismatch, "covariates have " + std::to_string(x.rows()) +
                                              " rows but the graph has " +
                                              std::to_string(g.nodes()) + " nodes");
  const GraphSpectrum s = spectrum(g, k);
  PcaivOptions opts;
  opts.rank = q;
  MethodResult r = pcaiv(x, s.vectors, opts);

  GraphRegressionExtras ex;
  ex.pcaiv = std::get<PcaivExtras>(r.extras);
  ex.mu = s.mu;
  ex.responses = s.vectors;
  // Share of each (uniformly centered) response explained by the least-squares fit.
  const Metric d = Metric::uniform(x.rows());
  const Matrix xc = center_columns(x, d);
  const Matrix yc = center_columns(s.vectors, d);
  const Matrix sxx = d.gram(xc);
  const Matrix fitted = xc * sxx.llt().solve(d.cross(xc, yc));
  ex.explained_share.resize(k);
  for (Index j = 0; j < k; ++j) {
    const double total = d.gram(yc.col(j))(0, 0);
    ex.explained_share(j) = total > 0.0 ? d.gram(fitted.col(j))(0, 0) / total : 0.0;
  }
  r.extras = std::move(ex);
  return r;
}

}  // namespace duality
