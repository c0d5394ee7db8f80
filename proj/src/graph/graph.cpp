#include "duality/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "duality/kernels.hpp"

namespace duality {

Graph Graph::from_adjacency(const Matrix& adjacency, std::vector<std::string> labels) {
  if (adjacency.rows() != adjacency.cols())
    throw Error(Errc::dimension_mismatch, "adjacency matrix must be square");
  const Index n = adjacency.rows();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double v = adjacency(i, j);
      if (v != 0.0 && v != 1.0)
        throw Error(Errc::invalid_argument, "adjacency entries must be 0 or 1", i);
      if (v != adjacency(j, i))
        throw Error(Errc::invalid_argument, "adjacency matrix must be symmetric", i);
    }
    if (adjacency(j, j) != 0.0)
      throw Error(Errc::invalid_argument, "self loop at node " + std::to_string(j), j);
  }
  if (labels.empty())
    for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  if (static_cast<Index>(labels.size()) != n)
    throw Error(Errc::dimension_mismatch, "one label per node is required");
  Graph g;
  g.adjacency_ = adjacency;
  g.degrees_ = adjacency.rowwise().sum();
  g.labels_ = std::move(labels);
  return g;
}

Graph Graph::from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, Index> index;
  std::vector<std::string> labels;
  auto id = [&](const std::string& l) {
    auto [it, inserted] = index.try_emplace(l, static_cast<Index>(labels.size()));
    if (inserted) labels.push_back(l);
    return it->second;
  };
  std::vector<std::pair<Index, Index>> pairs;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& [a, b] = edges[e];
    if (a == b)
      throw Error(Errc::invalid_argument,
                  "self loop on node '" + a + "' (edge " + std::to_string(e + 1) + ")",
                  static_cast<Index>(e));
    const Index i = id(a);  // sequenced so labels keep first-appearance order
    pairs.emplace_back(i, id(b));
  }
  const Index n = static_cast<Index>(labels.size());
  Matrix m = Matrix::Zero(n, n);
  for (auto [i, j] : pairs) m(i, j) = m(j, i) = 1.0;
  return from_adjacency(m, std::move(labels));
}

Matrix Graph::laplacian() const {
  Matrix l = -adjacency_;
  l.diagonal() += degrees_;
  return l;
}

std::vector<std::vector<Index>> Graph::components() const {
  const Index n = nodes();
  std::vector<Index> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> out;
  for (Index s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const Index c = static_cast<Index>(out.size());
    out.emplace_back();
    std::vector<Index> stack{s};
    comp[static_cast<std::size_t>(s)] = c;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Index u = 0; u < n; ++u) {
        if (adjacency_(v, u) != 0.0 && comp[static_cast<std::size_t>(u)] < 0) {
          comp[static_cast<std::size_t>(u)] = c;
          stack.push_back(u);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

Graph Graph::subgraph(const std::vector<Index>& members) const {
  std::vector<std::string> labels;
  for (Index i : members) labels.push_back(labels_[static_cast<std::size_t>(i)]);
  return from_adjacency(adjacency_(members, members), std::move(labels));
}

namespace {

void require_rows(const Graph& g, const Matrix& x) {
  if (x.rows() != g.nodes())
    throw Error(Errc::dimension_mismatch, "covariates have " + std::to_string(x.rows()) +
                                              " rows but the graph has " +
                                              std::to_string(g.nodes()) + " nodes");
}

void require_edges(const Graph& g) {
  if (g.total_degree() == 0.0) throw Error(Errc::invalid_argument, "graph has no edges");
}

// xᵗ(D − M)x = Σ over unordered edges (xᵢ − xⱼ)².
double laplacian_form(const Graph& g, const Eigen::Ref<const Vector>& x) {
  const auto n = static_cast<std::size_t>(g.nodes());
  const auto& k = kernels::active();
  const double dx = k.weighted_dot(x.data(), x.data(), g.degrees().data(), n);
  const Vector mx = g.adjacency() * x;
  return dx - k.dot(x.data(), mx.data(), n);
}

}  // namespace

Vector local_variance(const Graph& g, const Matrix& x) {
  require_rows(g, x);
  require_edges(g);
  Vector out(x.cols());
  // ΣΣ mᵢᵢ'(xᵢ − xᵢ')² counts each edge twice.
  for (Index j = 0; j < x.cols(); ++j)
    out(j) = 2.0 * laplacian_form(g, x.col(j)) / (2.0 * g.total_degree());
  return out;
}

Vector total_variance(const Matrix& x) {
  const double n = static_cast<double>(x.rows());
  const Matrix c = x.rowwise() - x.colwise().mean();
  return c.colwise().squaredNorm().transpose() / n;
}

double geary(const Graph& g, const Vector& x) {
  if (x.size() != g.nodes())
    throw Error(Errc::dimension_mismatch, "vector length does not match node count");
  require_edges(g);
  if (x.cwiseAbs().maxCoeff() == 0.0)
    throw Error(Errc::invalid_argument, "Geary ratio is undefined for the zero vector");
  const double denom = kernels::active().weighted_dot(x.data(), x.data(), g.degrees().data(),
                                                      static_cast<std::size_t>(x.size()));
  if (denom == 0.0)
    throw Error(Errc::invalid_argument, "vector vanishes on every node that has an edge");
  return laplacian_form(g, x) / denom;
}

Vector geary_classical(const Graph& g, const Matrix& x) {
  const Vector loc = local_variance(g, x);
  const Vector tot = total_variance(x);
  Vector out(x.cols());
  for (Index j = 0; j < x.cols(); ++j)
    out(j) = tot(j) > 0.0 ? loc(j) / tot(j) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

Matrix local_covariance(const Graph& g, const Matrix& x) {
  require_rows(g, x);
  require_edges(g);
  Matrix v = x.transpose() * g.laplacian() * x / (2.0 * g.total_degree());
  return 0.5 * (v + v.transpose());
}

}  // namespace duality
