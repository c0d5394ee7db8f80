#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duality/methods.hpp"

namespace duality {

/// Simple undirected graph: symmetric zero/one adjacency with an empty diagonal.
class Graph {
 public:
  static Graph from_adjacency(const Matrix& adjacency, std::vector<std::string> labels = {});
  /// Nodes are numbered in order of first appearance. Repeated edges (in either
  /// orientation) collapse into one; a self loop throws Errc::invalid_argument.
  static Graph from_edges(const std::vector<std::pair<std::string, std::string>>& edges);

  Index nodes() const noexcept { return adjacency_.rows(); }
  const Matrix& adjacency() const noexcept { return adjacency_; }
  const Vector& degrees() const noexcept { return degrees_; }
  /// Σᵢⱼ mᵢⱼ, twice the number of edges.
  double total_degree() const noexcept { return degrees_.sum(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// D − M with D = diag(degrees).
  Matrix laplacian() const;
  /// Connected components, each sorted, ordered by smallest member.
  std::vector<std::vector<Index>> components() const;
  bool connected() const { return components().size() == 1; }
  Graph subgraph(const std::vector<Index>& members) const;

 private:
  Matrix adjacency_;
  Vector degrees_;
  std::vector<std::string> labels_;
};

/// (1/2m) ΣΣ mᵢᵢ' (xᵢⱼ − xᵢ'ⱼ)² for each column j, m = Σ mᵢᵢ'.
Vector local_variance(const Graph& g, const Matrix& x);

/// (1/2n²) ΣΣ (xᵢⱼ − xᵢ'ⱼ)², the population variance of each column.
Vector total_variance(const Matrix& x);

/// Generalized Geary ratio xᵗ(D − M)x / xᵗDx with D the degree matrix.
double geary(const Graph& g, const Vector& x);

/// Classical ratio var_loc(xⱼ) / var(xⱼ) for each column. Constant columns give NaN.
Vector geary_classical(const Graph& g, const Matrix& x);

/// (1/2m) Xᵗ (D − M) X.
Matrix local_covariance(const Graph& g, const Matrix& x);

/// Solutions of (D − M) x = μ D x, sorted by μ ascending. The vectors are
/// D-orthonormal; the trivial constant solution (μ = 0) is not among them.
struct GraphSpectrum {
  Vector mu;
  Matrix vectors;  // n-by-k
  bool trivial_dropped = false;
  double trivial_mu = 0.0;
  Vector all_mu;   // every nontrivial μ, ascending
  std::vector<bool> tied_with_next;  // over `mu`
};

/// The k smallest nontrivial pairs. Throws Errc::disconnected for a graph with
/// more than one component and Errc::invalid_argument unless 1 ≤ k < n.
GraphSpectrum spectrum(const Graph& g, Index k);

struct ComponentSpectrum {
  std::vector<Index> nodes;  // indices into the parent graph
  GraphSpectrum spectrum;    // empty for isolated nodes
};

/// One spectrum per connected component, k clipped to the component size − 1.
std::vector<ComponentSpectrum> spectrum_per_component(const Graph& g, Index k);

struct Layout {
  Matrix coords;  // n-by-2, eigenvector scaled by √|1 − μ|
  Vector mu;
  bool degenerate = false;  // μ₂ tied with its neighbour: only the plane is defined
};

/// Planar representation from the two smallest nontrivial μ. Needs a connected
/// graph with at least three nodes.
Layout layout(const Graph& g);

/// Scales spectrum vectors by √|1 − μ| for plotting.
Matrix scaled_coordinates(const GraphSpectrum& s);

/// Uses the k smallest nontrivial eigenvectors as a response block and explains
/// them by the node covariates through PCA on instrumental variables, uniform
/// weights, optional rank q.
MethodResult regress_on_covariates(const Graph& g, const Matrix& x, Index k,
                                   std::optional<Index> q = {});

}  // namespace duality
