#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "duality/decomposition.hpp"
#include "duality/scree.hpp"

namespace duality {

// ---------------------------------------------------------------------------
// Inputs

/// Nonnegative m-by-p count table with positive margins.
class ContingencyTable {
 public:
  /// Throws Errc::invalid_argument on negative or non-finite counts, an empty or
  /// all-zero table, or a row or column with zero total. Missing labels are
  /// generated as r1.., c1..
  static ContingencyTable make(Matrix counts, std::vector<std::string> row_labels = {},
                               std::vector<std::string> col_labels = {});

  /// Like make(), but rows and columns whose total is zero are removed first.
  /// The labels of removed rows and columns are appended to `dropped`.
  static ContingencyTable make_filtered(Matrix counts, std::vector<std::string> row_labels,
                                        std::vector<std::string> col_labels,
                                        std::vector<std::string>* dropped = nullptr);

  const Matrix& counts() const noexcept { return counts_; }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
  double total() const noexcept { return total_; }
  Index rows() const noexcept { return counts_.rows(); }
  Index cols() const noexcept { return counts_.cols(); }

 private:
  Matrix counts_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  double total_ = 0.0;
};

/// One group label per observation, coded as an n-by-g zero/one indicator matrix.
class GroupCoding {
 public:
  /// Groups are numbered in order of first appearance.
  static GroupCoding from_labels(const std::vector<std::string>& per_observation);
  /// Throws unless every row holds exactly one 1 and every column at least one.
  static GroupCoding from_indicator(const Matrix& indicator,
                                    std::vector<std::string> group_labels = {});

  const Matrix& indicator() const noexcept { return indicator_; }
  const std::vector<std::string>& group_labels() const noexcept { return labels_; }
  Index observations() const noexcept { return indicator_.rows(); }
  Index groups() const noexcept { return indicator_.cols(); }

 private:
  Matrix indicator_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Results

struct CaExtras {
  double chi_square = 0.0;
  Index dof = 0;
  double total_count = 0.0;
};

struct LdaExtras {
  Matrix discriminant_vectors;  // p-by-k, aᵗ T a = 1
  Vector discriminating_ratios;  // aᵗ B a / aᵗ T a, in [0, 1]
  Matrix group_means;            // g-by-p
  Matrix group_coords;           // g-by-k
  Matrix total;                  // T = Xᵗ D X
  Matrix between;                // B = Aᵗ Δ A
  Matrix within;                 // W = (X − Y A)ᵗ D (X − Y A)
  double huyghens_residual = 0.0;  // max|T − B − W| / max|T|
};

struct PcaivExtras {
  Matrix metric;               // R = Sxx⁻¹ Sxy Q Syx Sxx⁻¹
  Matrix fitted_operator;      // X R Xᵗ D
  Matrix constrained_metric;   // R Z_q Z_qᵗ R, the rank-q positive metric
};

struct CcaExtras {
  Vector canonical_correlations;  // min(p1, p2) values, nonincreasing
  Matrix first_coefficients;      // p1-by-k, uᵗ S11 u = I
  Matrix second_coefficients;     // p2-by-k, vᵗ S22 v = I
  Vector merged_eigenvalues;      // spectrum of the column-merged triple
};

struct GraphRegressionExtras {
  PcaivExtras pcaiv;
  Vector mu;                 // generalized eigenvalues of the response vectors
  Vector explained_share;    // weighted R² of each response vector on the covariates
  Matrix responses;          // n-by-k graph eigenvectors used as response
};

using MethodExtras =
    std::variant<std::monostate, CaExtras, LdaExtras, PcaivExtras, CcaExtras, GraphRegressionExtras>;

struct MethodResult {
  Decomposition decomposition;
  ScreeTable scree;  // built from the full spectrum, not the truncation
  Matrix row_coords;
  Matrix col_coords;
  MethodExtras extras;
};

// ---------------------------------------------------------------------------
// Methods. Row weights default to 1/n; user weights must be positive and are
// rescaled to sum to one.

struct PcaOptions {
  bool standardize = false;
  std::optional<Vector> weights;
  std::vector<std::string> column_labels;  // used in error messages only
  std::optional<Index> rank;
};

/// Centered PCA of (X, I or diag(1/σ²), diag(w)). Rows are principal
/// components, columns principal axes.
MethodResult pca(const Matrix& x, const PcaOptions& options = {});

/// The correspondence analysis triple (D_r⁻¹ F D_c⁻¹ − 11ᵗ, D_c, D_r).
Triple ca_triple(const ContingencyTable& table);

/// Correspondence analysis. Symmetric-map coordinates: rows are principal
/// components (Cᵗ D_r C = Λ), columns principal axes (Aᵗ D_c A = Λ).
MethodResult ca(const ContingencyTable& table, std::optional<Index> rank = {});

struct ChiSquare {
  double statistic = 0.0;
  Index dof = 0;
};

ChiSquare chi_square(const ContingencyTable& table);

/// Each column rescaled to sum to 100.
Matrix profile_percentages(const ContingencyTable& table);

/// Discriminant analysis as the triple (group means, T⁻¹, Δ). Rows are the
/// observation scores X a, columns the discriminant vectors a.
MethodResult lda(const Matrix& x, const GroupCoding& groups,
                 const std::optional<Vector>& weights = {}, std::optional<Index> rank = {});

struct PcaivOptions {
  std::optional<Matrix> response_metric;  // defaults to the identity
  std::optional<Vector> weights;
  std::optional<Index> rank;
};

/// PCA of X with respect to instrumental variables: the triple (X, R, D).
MethodResult pcaiv(const Matrix& x, const Matrix& y, const PcaivOptions& options = {});

/// Canonical correlation analysis via the triple (X₂ᵗ D X₁, S11⁻¹, S22⁻¹), whose
/// eigenvalues are the squared canonical correlations. Rows are the canonical
/// variates X₁ u; columns stack u over v.
MethodResult cca(const Matrix& x1, const Matrix& x2, const std::optional<Vector>& weights = {},
                 std::optional<Index> rank = {});

/// Normalized positive observation weights as a diagonal metric (uniform 1/n when absent).
Metric observation_weights(Index n, const std::optional<Vector>& weights);

}  // namespace duality
