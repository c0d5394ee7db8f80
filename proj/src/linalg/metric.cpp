#include "duality/metric.hpp"

#include <cmath>
#include <string>

#include "duality/kernels.hpp"

namespace duality {

namespace {

std::string label(std::string_view name) { return std::string(name); }

bool exactly_diagonal(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != 0.0) return false;
  return true;
}

}  // namespace

Matrix symmetrized(const Matrix& a, std::string_view name) {
  if (a.rows() != a.cols())
    throw Error(Errc::dimension_mismatch,
                label(name) + " must be square, got " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  if (a.size() == 0) return a;
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale)
    throw Error(Errc::not_symmetric, label(name) + " is not symmetric (max |M - Mt| = " +
                                         std::to_string(asym) + ")");
  return 0.5 * (a + a.transpose());
}

Matrix cholesky_upper(const Matrix& a, std::string_view name) {
  const Index n = a.rows();
  Matrix h = Matrix::Zero(n, n);
  const double scale = n == 0 ? 0.0 : a.diagonal().cwiseAbs().maxCoeff();
  const double floor = 1e-14 * scale;
  for (Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Index k = 0; k < j; ++k) d -= h(k, j) * h(k, j);
    if (!(d > floor))
      throw Error(Errc::not_positive_definite,
                  label(name) + " is not positive definite (pivot " + std::to_string(j) +
                      " = " + std::to_string(d) + ")",
                  j);
    const double hjj = std::sqrt(d);
    h(j, j) = hjj;
    for (Index i = j + 1; i < n; ++i) {
      double s = a(j, i);
      for (Index k = 0; k < j; ++k) s -= h(k, j) * h(k, i);
      h(j, i) = s / hjj;
    }
  }
  return h;
}

Metric Metric::diagonal(Vector weights, std::string_view name) {
  for (Index i = 0; i < weights.size(); ++i) {
    if (!(weights(i) > 0.0) || !std::isfinite(weights(i)))
      throw Error(Errc::not_positive_definite,
                  label(name) + " is not positive definite (pivot " + std::to_string(i) +
                      " = " + std::to_string(weights(i)) + ")",
                  i);
  }
  Metric m;
  m.size_ = weights.size();
  m.diagonal_ = true;
  m.weights_ = std::move(weights);
  return m;
}

Metric Metric::dense(const Matrix& raw, std::string_view name) {
  Matrix sym = symmetrized(raw, name);
  if (exactly_diagonal(sym)) return diagonal(sym.diagonal(), name);
  Metric m;
  m.size_ = sym.rows();
  m.diagonal_ = false;
  m.factor_ = cholesky_upper(sym, name);
  m.dense_ = std::move(sym);
  return m;
}

Metric Metric::identity(Index n) { return diagonal(Vector::Ones(n)); }

Metric Metric::uniform(Index n) {
  return diagonal(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

Matrix Metric::to_dense() const {
  if (diagonal_) return weights_.asDiagonal();
  return dense_;
}

Matrix Metric::apply(const Matrix& x) const {
  if (diagonal_) return weights_.asDiagonal() * x;
  return dense_ * x;
}

Matrix Metric::gram(const Matrix& x) const {
  if (x.rows() != size_)
    throw Error(Errc::dimension_mismatch, "gram: row count does not match metric size");
  if (!diagonal_) {
    Matrix g = x.transpose() * (dense_ * x);
    return 0.5 * (g + g.transpose());
  }
  Matrix g(x.cols(), x.cols());
  if (x.cols() > 0) {
    kernels::active().weighted_gram(x.data(), static_cast<std::size_t>(x.rows()),
                                    static_cast<std::size_t>(x.cols()), weights_.data(),
                                    g.data());
  }
  return g;
}

Matrix Metric::cross(const Matrix& x, const Matrix& y) const {
  if (x.rows() != size_ || y.rows() != size_)
    throw Error(Errc::dimension_mismatch, "cross: row count does not match metric size");
  if (!diagonal_) return x.transpose() * (dense_ * y);
  Matrix out(x.cols(), y.cols());
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(size_);
  for (Index j = 0; j < y.cols(); ++j)
    for (Index i = 0; i < x.cols(); ++i)
      out(i, j) = k.weighted_dot(x.col(i).data(), y.col(j).data(), weights_.data(), n);
  return out;
}

Matrix Metric::factor_apply(const Matrix& x) const {
  if (diagonal_) return weights_.cwiseSqrt().asDiagonal() * x;
  return factor_.triangularView<Eigen::Upper>() * x;
}

Matrix Metric::factor_solve(const Matrix& x) const {
  if (diagonal_) return weights_.cwiseSqrt().cwiseInverse().asDiagonal() * x;
  return factor_.triangularView<Eigen::Upper>().solve(x);
}

Matrix Metric::inverse() const {
  if (diagonal_) return Matrix(weights_.cwiseInverse().asDiagonal());
  // (HᵗH)⁻¹ = H⁻¹ H⁻ᵗ
  const Matrix hinv = factor_solve(Matrix::Identity(size_, size_));
  Matrix inv = hinv * hinv.transpose();
  return 0.5 * (inv + inv.transpose());
}

}  // namespace duality
