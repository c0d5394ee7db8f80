#include "duality/scree.hpp"

namespace duality {

ScreeTable make_scree(const Vector& eigenvalues) {
  ScreeTable table;
  table.total = eigenvalues.sum();
  double running = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double pct = table.total > 0.0 ? 100.0 * eigenvalues(i) / table.total : 0.0;
    running += pct;
    table.rows.push_back({i + 1, eigenvalues(i), pct, running});
  }
  if (!table.rows.empty() && table.total > 0.0) table.rows.back().cumulative_pct = 100.0;
  return table;
}

bool splits_near_tie(const Vector& eigenvalues, Index q, double tolerance) {
  if (q < 1 || q >= eigenvalues.size()) return false;
  const double upper = eigenvalues(q - 1);
  if (!(upper > 0.0)) return false;
  return eigenvalues(q) / upper >= 1.0 - tolerance;
}

}  // namespace duality
