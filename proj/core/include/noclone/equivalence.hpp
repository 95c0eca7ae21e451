// Copyright 2026 The noclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "noclone/matrixcore.hpp"
#include "noclone/states.hpp"

namespace noclone {

/// Unitary U on a zero-padded space of dimension embed_dim with
/// U a_i = b_i for two index-aligned families.
struct LinkingUnitary {
  Matrix matrix;
  Index embed_dim = 0;
  double residual = 0.0;  // max_i ||U a_i - b_i||

  /// Applies U to `v` after zero-padding it to embed_dim.
  Vector apply(const Vector& v) const;
};

struct LinkingReport {
  double unitarity_defect = 0.0;
  double max_residual = 0.0;
};

/// Largest residual accepted for a constructed link.
inline constexpr double kLinkResidualBound = 1e-8;

/// True iff max_ij |G1_ij - G2_ij| <= eps_gram. Throws SizeMismatch.
bool grams_equal(const GramMatrix& g1, const GramMatrix& g2, const Tolerances& tol = {});

/**
 * Build a unitary carrying family `a` onto family `b` (equal Gram
 * matrices are necessary and sufficient).
 *
 * The common Gram matrix is factored as R^dagger R (R is r x n); the
 * partial isometries P_A = A V Lambda^{-1/2} and P_B = B V Lambda^{-1/2}
 * satisfy A = P_A R and B = P_B R. Both are completed to unitaries Q_A,
 * Q_B with orthonormal_extension and U = Q_B Q_A^dagger, so U P_A = P_B.
 *
 * Throws GramMismatch when the Gram matrices differ beyond eps_gram (or
 * when the resulting residual exceeds kLinkResidualBound), and
 * NumericalRankInconsistency when the two families' numerical ranks
 * disagree.
 */
LinkingUnitary unitary_linking(const StateFamily& a, const StateFamily& b,
                               const Tolerances& tol = {});

/// Reports ||U^dagger U - I|| and max_i ||U a_i - b_i||. Never throws on
/// large residuals; throws DimensionMismatch if a family does not fit.
LinkingReport verify_linking(const LinkingUnitary& u, const StateFamily& a, const StateFamily& b);

}  // namespace noclone
