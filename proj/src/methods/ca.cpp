#include <cmath>
#include <string>

#include "common.hpp"

namespace duality {

namespace {

std::vector<std::string> default_labels(std::vector<std::string> labels, Index n, char prefix) {
  if (!labels.empty()) {
    if (static_cast<Index>(labels.size()) != n)
      throw Error(Errc::dimension_mismatch, std::string("expected ") + std::to_string(n) +
                                                " labels, got " + std::to_string(labels.size()));
    return labels;
  }
  labels.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
  return labels;
}

}  // namespace

ContingencyTable ContingencyTable::make(Matrix counts, std::vector<std::string> row_labels,
                                        std::vector<std::string> col_labels) {
  if (counts.size() == 0) throw Error(Errc::invalid_argument, "contingency table is empty");
  ContingencyTable t;
  t.row_labels_ = default_labels(std::move(row_labels), counts.rows(), 'r');
  t.col_labels_ = default_labels(std::move(col_labels), counts.cols(), 'c');
  for (Index j = 0; j < counts.cols(); ++j)
    for (Index i = 0; i < counts.rows(); ++i)
      if (!(counts(i, j) >= 0.0) || !std::isfinite(counts(i, j)))
        throw Error(Errc::invalid_argument,
                    "count at row '" + t.row_labels_[static_cast<std::size_t>(i)] +
                        "', column '" + t.col_labels_[static_cast<std::size_t>(j)] +
                        "' is negative or not finite");
  const Vector rs = counts.rowwise().sum();
  const Vector cs = counts.colwise().sum();
  for (Index i = 0; i < rs.size(); ++i)
    if (rs(i) <= 0.0)
      throw Error(Errc::invalid_argument,
                  "row '" + t.row_labels_[static_cast<std::size_t>(i)] + "' has zero total", i);
  for (Index j = 0; j < cs.size(); ++j)
    if (cs(j) <= 0.0)
      throw Error(Errc::invalid_argument,
                  "column '" + t.col_labels_[static_cast<std::size_t>(j)] + "' has zero total", j);
  t.total_ = counts.sum();
  t.counts_ = std::move(counts);
  return t;
}

ContingencyTable ContingencyTable::make_filtered(Matrix counts, std::vector<std::string> row_labels,
                                                 std::vector<std::string> col_labels,
                                                 std::vector<std::string>* dropped) {
  row_labels = default_labels(std::move(row_labels), counts.rows(), 'r');
  col_labels = default_labels(std::move(col_labels), counts.cols(), 'c');
  std::vector<Index> keep_rows, keep_cols;
  std::vector<std::string> rl, cl;
  for (Index i = 0; i < counts.rows(); ++i) {
    if (counts.row(i).sum() > 0.0) {
      keep_rows.push_back(i);
      rl.push_back(row_labels[static_cast<std::size_t>(i)]);
    } else if (dropped) {
      dropped->push_back("row '" + row_labels[static_cast<std::size_t>(i)] + "'");
    }
  }
  for (Index j = 0; j < counts.cols(); ++j) {
    if (counts.col(j).sum() > 0.0) {
      keep_cols.push_back(j);
      cl.push_back(col_labels[static_cast<std::size_t>(j)]);
    } else if (dropped) {
      dropped->push_back("column '" + col_labels[static_cast<std::size_t>(j)] + "'");
    }
  }
  Matrix kept = counts(keep_rows, keep_cols);
  return make(std::move(kept), std::move(rl), std::move(cl));
}

Triple ca_triple(const ContingencyTable& table) {
  const Matrix f = table.counts() / table.total();
  const Vector r = f.rowwise().sum();
  const Vector c = f.colwise().sum();
  Matrix x(f.rows(), f.cols());
  for (Index j = 0; j < f.cols(); ++j)
    for (Index i = 0; i < f.rows(); ++i) x(i, j) = f(i, j) / (r(i) * c(j)) - 1.0;
  return Triple(std::move(x), Metric::diagonal(c, "D_c"), Metric::diagonal(r, "D_r"));
}

ChiSquare chi_square(const ContingencyTable& table) {
  const Matrix& n = table.counts();
  const Vector rs = n.rowwise().sum();
  const Vector cs = n.colwise().sum();
  const double total = table.total();
  ChiSquare out;
  for (Index j = 0; j < n.cols(); ++j) {
    for (Index i = 0; i < n.rows(); ++i) {
      const double expected = rs(i) * cs(j) / total;
      const double diff = n(i, j) - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.dof = (n.rows() - 1) * (n.cols() - 1);
  return out;
}

Matrix profile_percentages(const ContingencyTable& table) {
  const Vector cs = table.counts().colwise().sum();
  return 100.0 * table.counts() * cs.cwiseInverse().asDiagonal();
}

MethodResult ca(const ContingencyTable& table, std::optional<Index> rank) {
  Decomposition dec = decompose(ca_triple(table), rank);
  const ChiSquare chi = chi_square(table);
  Matrix rows = dec.principal_components;
  Matrix cols = dec.principal_axes;
  return detail::finish(std::move(dec), std::move(rows), std::move(cols),
                        CaExtras{chi.statistic, chi.dof, table.total()});
}

}  // namespace duality
