#include "common.hpp"

#include <string>

namespace duality {

Metric observation_weights(Index n, const std::optional<Vector>& weights) {
  if (n < 1) throw Error(Errc::invalid_argument, "no observations");
  if (!weights) return Metric::uniform(n);
  if (weights->size() != n)
    throw Error(Errc::dimension_mismatch, "expected " + std::to_string(n) + " weights, got " +
                                              std::to_string(weights->size()));
  for (Index i = 0; i < n; ++i)
    if (!((*weights)(i) > 0.0) || !std::isfinite((*weights)(i)))
      throw Error(Errc::invalid_argument,
                  "weight " + std::to_string(i) + " is not positive; drop zero-weight rows first",
                  i);
  return Metric::diagonal(*weights / weights->sum(), "weights");
}

namespace detail {

Metric covariance_metric(const Matrix& s, const std::string& what) {
  try {
    return Metric::dense(s, what);
  } catch (const Error& e) {
    if (e.code() != Errc::not_positive_definite) throw;
    throw Error(Errc::singular,
                what + " is singular (" + e.what() +
                    "); reduce the number of variables, e.g. with a PCA, before this analysis",
                e.index());
  }
}

}  // namespace detail
}  // namespace duality
