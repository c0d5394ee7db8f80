#include <cmath>
#include <string>

#include "common.hpp"

namespace duality {

MethodResult pca(const Matrix& x, const PcaOptions& options) {
  if (x.rows() < 2) throw Error(Errc::invalid_argument, "PCA needs at least two observations");
  const Metric d = observation_weights(x.rows(), options.weights);
  const Matrix centered = center_columns(x, d);

  Metric q = Metric::identity(x.cols());
  if (options.standardize) {
    Vector inv_var(x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
      const double var = d.gram(centered.col(j))(0, 0);
      const double scale = x.col(j).cwiseAbs().maxCoeff();
      if (!(var > 0.0) || std::sqrt(var) <= 1e-12 * scale) {
        const std::string name = static_cast<std::size_t>(j) < options.column_labels.size()
                                     ? "'" + options.column_labels[static_cast<std::size_t>(j)] + "'"
                                     : std::to_string(j);
        throw Error(Errc::invalid_argument,
                    "column " + name + " has zero variance and cannot be standardized", j);
      }
      inv_var(j) = 1.0 / var;
    }
    q = Metric::diagonal(inv_var, "Q");
  }

  Decomposition dec = decompose(Triple(centered, q, d), options.rank);
  Matrix rows = dec.principal_components;
  Matrix cols = dec.principal_axes;
  return detail::finish(std::move(dec), std::move(rows), std::move(cols));
}

}  // namespace duality
