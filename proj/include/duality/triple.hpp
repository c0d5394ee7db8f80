#pragma once

#include "duality/metric.hpp"
#include "duality/types.hpp"

namespace duality {

/// The (data, variable metric, observation weights) bundle every analysis
/// starts from. data is n-by-p; the variable metric is p-by-p; the observation
/// weights are n-by-n. Immutable once built.
class Triple {
 public:
  Triple(Matrix data, Metric variable_metric, Metric observation_weights);

  const Matrix& data() const noexcept { return data_; }
  const Metric& variable_metric() const noexcept { return q_; }
  const Metric& observation_weights() const noexcept { return d_; }
  Index observations() const noexcept { return data_.rows(); }
  Index variables() const noexcept { return data_.cols(); }

 private:
  Matrix data_;
  Metric q_;
  Metric d_;
};

Triple make_triple(const Matrix& data, const Matrix& variable_metric,
                   const Matrix& observation_weights);

/// Removes the weighted column means so that Xᵗ D 1 = 0.
Matrix center_columns(const Matrix& data, const Metric& observation_weights);
Triple center_columns(const Triple& t);

/// Weighted column means g = Xᵗ D 1 / (1ᵗ D 1).
Vector weighted_means(const Matrix& data, const Metric& observation_weights);

struct CharacterizingOperators {
  Matrix vq;  // XᵗDXQ, p-by-p
  Matrix wd;  // XQXᵗD, n-by-n
};

CharacterizingOperators characterizing_operators(const Triple& t);

}  // namespace duality
