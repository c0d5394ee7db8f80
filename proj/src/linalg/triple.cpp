#include "duality/triple.hpp"

#include <string>

namespace duality {

Triple::Triple(Matrix data, Metric variable_metric, Metric observation_weights)
    : data_(std::move(data)), q_(std::move(variable_metric)), d_(std::move(observation_weights)) {
  if (q_.size() != data_.cols())
    throw Error(Errc::dimension_mismatch,
                "variable metric is " + std::to_string(q_.size()) + "x" +
                    std::to_string(q_.size()) + " but data has " +
                    std::to_string(data_.cols()) + " columns");
  if (d_.size() != data_.rows())
    throw Error(Errc::dimension_mismatch,
                "observation weights are " + std::to_string(d_.size()) + "x" +
                    std::to_string(d_.size()) + " but data has " +
                    std::to_string(data_.rows()) + " rows");
  if (!data_.allFinite()) throw Error(Errc::invalid_argument, "data contains non-finite values");
}

Triple make_triple(const Matrix& data, const Matrix& variable_metric,
                   const Matrix& observation_weights) {
  if (variable_metric.rows() != data.cols() || variable_metric.cols() != data.cols())
    throw Error(Errc::dimension_mismatch, "variable metric must be p-by-p with p = " +
                                              std::to_string(data.cols()));
  if (observation_weights.rows() != data.rows() || observation_weights.cols() != data.rows())
    throw Error(Errc::dimension_mismatch, "observation weights must be n-by-n with n = " +
                                              std::to_string(data.rows()));
  return Triple(data, Metric::dense(variable_metric, "Q"), Metric::dense(observation_weights, "D"));
}

Vector weighted_means(const Matrix& data, const Metric& observation_weights) {
  const Vector ones = Vector::Ones(data.rows());
  const Vector d1 = observation_weights.apply(ones);
  const double total = ones.dot(d1);
  if (!(total > 0.0))
    throw Error(Errc::invalid_argument, "observation weights sum to zero");
  return data.transpose() * d1 / total;
}

Matrix center_columns(const Matrix& data, const Metric& observation_weights) {
  const Vector means = weighted_means(data, observation_weights);
  return data.rowwise() - means.transpose();
}

Triple center_columns(const Triple& t) {
  return Triple(center_columns(t.data(), t.observation_weights()), t.variable_metric(),
                t.observation_weights());
}

CharacterizingOperators characterizing_operators(const Triple& t) {
  const Matrix& x = t.data();
  const Matrix v = t.observation_weights().gram(x);
  const Matrix w = x * t.variable_metric().apply(x.transpose());
  CharacterizingOperators ops;
  ops.vq = t.variable_metric().apply(v.transpose()).transpose();  // V Q = (Q V)ᵗ
  ops.wd = t.observation_weights().apply(w.transpose()).transpose();
  return ops;
}

}  // namespace duality
