#pragma once

#include <vector>

#include "duality/types.hpp"

namespace duality {

struct ScreeRow {
  Index axis = 0;  // 1-based
  double eigenvalue = 0.0;
  double inertia_pct = 0.0;
  double cumulative_pct = 0.0;
};

struct ScreeTable {
  std::vector<ScreeRow> rows;
  double total = 0.0;
};

/// Percentages are taken against the sum of the listed eigenvalues.
ScreeTable make_scree(const Vector& eigenvalues);

/// True when λ_{q+1} / λ_q ≥ 1 − tolerance, i.e. keeping q axes cuts through a
/// near-degenerate pair whose individual axes are not stable.
bool splits_near_tie(const Vector& eigenvalues, Index q, double tolerance = 1e-3);

}  // namespace duality
