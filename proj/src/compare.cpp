#include "duality/compare.hpp"

#include <cmath>
#include <string>

#include "duality/kernels.hpp"

namespace duality {

double covv(const Matrix& o1, const Matrix& o2) {
  if (o1.rows() != o2.rows() || o1.cols() != o2.cols())
    throw Error(Errc::dimension_mismatch, "covv: operators differ in size (" +
                                              std::to_string(o1.rows()) + "x" +
                                              std::to_string(o1.cols()) + " vs " +
                                              std::to_string(o2.rows()) + "x" +
                                              std::to_string(o2.cols()) + ")");
  // Tr(O1ᵗ O2) is the elementwise inner product over the column-major storage.
  return kernels::active().dot(o1.data(), o2.data(), static_cast<std::size_t>(o1.size()));
}

double rv(const Matrix& o1, const Matrix& o2) {
  const double c12 = covv(o1, o2);
  const double c11 = covv(o1, o1);
  const double c22 = covv(o2, o2);
  if (c11 == 0.0 || c22 == 0.0)
    throw Error(Errc::invalid_argument, "RV is undefined for a zero operator");
  return c12 / std::sqrt(c11 * c22);
}

double rv_triples(const Triple& t1, const Triple& t2) {
  if (t1.observations() != t2.observations())
    throw Error(Errc::dimension_mismatch, "triples describe different numbers of observations");
  const Matrix d1 = t1.observation_weights().to_dense();
  const Matrix d2 = t2.observation_weights().to_dense();
  const double scale = std::max(d1.cwiseAbs().maxCoeff(), d2.cwiseAbs().maxCoeff());
  if ((d1 - d2).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(Errc::invalid_argument, "triples must share the same observation weights");
  return rv(characterizing_operators(t1).wd, characterizing_operators(t2).wd);
}

double rv_max(const Vector& eigenvalues, Index q) {
  if (q < 1 || q > eigenvalues.size())
    throw Error(Errc::invalid_argument, "rv_max: q = " + std::to_string(q) +
                                            " is outside [1, " +
                                            std::to_string(eigenvalues.size()) + "]");
  const double total = eigenvalues.squaredNorm();
  if (total == 0.0) throw Error(Errc::invalid_argument, "rv_max: all eigenvalues are zero");
  return std::sqrt(eigenvalues.head(q).squaredNorm() / total);
}

}  // namespace duality
