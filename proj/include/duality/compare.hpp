#pragma once

#include "duality/triple.hpp"

namespace duality {

/// Vector covariance Tr(O1ᵗ O2) between two equally sized operators.
double covv(const Matrix& o1, const Matrix& o2);

/// RV coefficient covv(O1, O2) / √(covv(O1, O1) covv(O2, O2)).
/// Lies in [0, 1] for positive semidefinite operators; for general input the
/// value is returned as computed and may be negative. Throws Errc::invalid_argument
/// when either operator is identically zero.
double rv(const Matrix& o1, const Matrix& o2);

/// RV between the operators X₁Q₁X₁ᵗD and X₂Q₂X₂ᵗD. Both triples must share the
/// observation weights D.
double rv_triples(const Triple& t1, const Triple& t2);

/// Best RV reachable by a rank-q approximation: √(Σ_{i≤q} λᵢ² / Σ λᵢ²).
double rv_max(const Vector& eigenvalues, Index q);

}  // namespace duality
