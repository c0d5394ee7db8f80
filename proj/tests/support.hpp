#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "duality/graph.hpp"
#include "duality/methods.hpp"

namespace duality::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Index n, Index p) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(n, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = g(rng);
  return m;
}

inline Matrix random_spd(std::mt19937_64& rng, Index p) {
  const Matrix a = random_matrix(rng, p, p);
  return a * a.transpose() + 0.5 * Matrix::Identity(p, p);
}

/// Positive weights summing to one.
inline Vector random_weights(std::mt19937_64& rng, Index n) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  Vector w(n);
  for (Index i = 0; i < n; ++i) w(i) = u(rng);
  return w / w.sum();
}

inline Index uniform_index(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Nonzero eigenvalues of a (possibly nonsymmetric) operator with a real spectrum, descending.
inline Vector nonzero_real_eigenvalues(const Matrix& op, double tol = 1e-9) {
  Eigen::EigenSolver<Matrix> es(op, false);
  std::vector<double> v;
  double top = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    top = std::max(top, std::abs(es.eigenvalues()(i).real()));
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i).real()) > tol * std::max(top, 1.0))
      v.push_back(es.eigenvalues()(i).real());
  std::sort(v.begin(), v.end(), std::greater<>());
  return Eigen::Map<Vector>(v.data(), static_cast<Index>(v.size()));
}

/// Cosines of the principal angles between two column spans: all near 1 when they agree.
inline Vector subspace_cosines(const Matrix& a, const Matrix& b) {
  const Matrix qa = Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(a.rows(), a.cols());
  const Matrix qb = Eigen::HouseholderQR<Matrix>(b).householderQ() * Matrix::Identity(b.rows(), b.cols());
  return Eigen::JacobiSVD<Matrix>(qa.transpose() * qb).singularValues();
}

/// |cos| of the angle between two vectors.
inline double abs_cosine(const Vector& a, const Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

/// Connected graph: a random spanning tree plus extra edges with probability `p`.
inline Graph random_connected_graph(std::mt19937_64& rng, Index n, double p) {
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 1; i < n; ++i) {
    const Index j = uniform_index(rng, 0, i - 1);
    m(i, j) = m(j, i) = 1.0;
  }
  std::bernoulli_distribution extra(p);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (extra(rng)) m(i, j) = m(j, i) = 1.0;
  return Graph::from_adjacency(m);
}

inline Graph path_graph(Index n) {
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 1.0;
  return Graph::from_adjacency(m);
}

inline Graph cycle_graph(Index n) {
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, (i + 1) % n) = m((i + 1) % n, i) = 1.0;
  return Graph::from_adjacency(m);
}

inline Graph complete_graph(Index n) {
  Matrix m = Matrix::Ones(n, n) - Matrix::Identity(n, n);
  return Graph::from_adjacency(m);
}

/// `groups` disjoint complete graphs of `size` nodes each.
inline Graph disjoint_cliques(Index groups, Index size) {
  const Index n = groups * size;
  Matrix m = Matrix::Zero(n, n);
  for (Index g = 0; g < groups; ++g)
    m.block(g * size, g * size, size, size) = Matrix::Ones(size, size) - Matrix::Identity(size, size);
  return Graph::from_adjacency(m);
}

/// Counts in [0, hi] with every row and column margin positive.
inline Matrix random_counts(std::mt19937_64& rng, Index m, Index p, int hi = 50) {
  std::uniform_int_distribution<int> u(0, hi);
  Matrix c(m, p);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < p; ++j) c(i, j) = u(rng);
  for (Index i = 0; i < m; ++i)
    if (c.row(i).sum() == 0) c(i, uniform_index(rng, 0, p - 1)) = 1;
  for (Index j = 0; j < p; ++j)
    if (c.col(j).sum() == 0) c(uniform_index(rng, 0, m - 1), j) = 1;
  return c;
}

/// Group labels with every group present.
inline std::vector<std::string> random_groups(std::mt19937_64& rng, Index n, Index g) {
  std::vector<std::string> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = "g" + std::to_string(i < g ? i : uniform_index(rng, 0, g - 1));
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace duality::testing
