#pragma once

#include <optional>
#include <vector>

#include "duality/triple.hpp"

namespace duality {

/// An eigenvalue counts towards the rank iff it exceeds this times max(λ₁, 1).
inline constexpr double kZeroEigenvalueTolerance = 1e-12;
/// Neighbouring eigenvalues closer than this (relative) are flagged as tied.
inline constexpr double kTieTolerance = 1e-9;

/// Generalized eigendecomposition of a triple.
///
/// With Z the axis basis, A the principal axes, L the component basis and C the
/// principal components:
///   VQ Z = Z Λ,  Zᵗ Q Z = I,  A = Z S,  Aᵗ Q A = Λ,
///   WD L = L Λ,  Lᵗ D L = I,  C = L S,  Cᵗ D C = Λ,
/// and the transition formulas X Q Z = C, Xᵗ D L = A.
///
/// Each column of the right singular basis is oriented so that its largest
/// entry is positive, which fixes the sign of every returned column.
struct Decomposition {
  Vector eigenvalues;            // retained: first min(q, rank) of the spectrum
  Vector spectrum;               // every eigenvalue above the zero threshold
  Index rank = 0;
  Matrix axis_basis;             // p-by-k
  Matrix principal_axes;         // p-by-k
  Matrix component_basis;        // n-by-k
  Matrix principal_components;   // n-by-k
  Vector singular_values;        // √eigenvalues
  double inertia = 0.0;          // trace(VQ), independent of truncation
  std::vector<bool> tied_with_next;  // over the spectrum

  Index retained() const noexcept { return eigenvalues.size(); }
};

/// Cholesky factors of both metrics followed by the SVD of K X Hᵗ.
/// `rank_request` truncates to the first q columns; it must not exceed
/// min(n, p).
Decomposition decompose(const Triple& t, std::optional<Index> rank_request = {});

/// Same computation when the variable metric is only positive semidefinite and
/// supplied in factored form Q = Gᵗ G (G is k-by-p, any k). The axis basis comes
/// from the transition formula Z = Xᵗ D L S⁻¹ since G need not be invertible.
Decomposition decompose_semidefinite(const Matrix& data, const Matrix& metric_factor,
                                     const Metric& observation_weights,
                                     std::optional<Index> rank_request = {});

struct TransitionResiduals {
  double components = 0.0;  // max |X Q Z − C|
  double axes = 0.0;        // max |Xᵗ D L − A|
};

TransitionResiduals transition_check(const Triple& t, const Decomposition& d);

}  // namespace duality
