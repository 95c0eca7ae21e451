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

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "noclone/equivalence.hpp"
#include "noclone/matrixcore.hpp"
#include "noclone/states.hpp"

namespace noclone {

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Find M, Hermitian PSD with unit diagonal, whose entries equal
 * `fixed_values` wherever `fixed_mask` is set. Free entries may take any
 * value. Transforming source_i -> target_i is possible iff such an M exists
 * for fixed ratios <s_i|s_j> / <t_i|t_j> (free where both overlaps vanish).
 */
struct CompletionProblem {
  BoolMatrix fixed_mask;
  Matrix fixed_values;  // zero at free positions

  Index size() const { return fixed_values.rows(); }
  bool fully_fixed() const { return fixed_mask.all(); }

  /// Throws MalformedProblem unless the mask and values are square, of equal
  /// size, Hermitian-consistent, and the diagonal is fixed to one.
  void validate() const;

  static CompletionProblem all_fixed(const Matrix& values);
};

/// <s_i|s_j> != 0 while <t_i|t_j> = 0: no unitary can map s to t.
struct ZeroContradiction {
  Index i = 0;
  Index j = 0;
  Complex source_overlap;
  Complex target_overlap;
};

/// Principal submatrix over fully fixed entries with a negative eigenvalue.
struct NegativeMinor {
  std::vector<Index> indices;
  double min_eigenvalue = 0.0;
};

using InfeasibilityWitness = std::variant<ZeroContradiction, NegativeMinor>;

std::string describe(const InfeasibilityWitness& witness);

/// Re-checks a minor witness against the problem, independently of solve().
bool verify_witness(const NegativeMinor& witness, const CompletionProblem& problem,
                    const Tolerances& tol = {});

/// Re-checks a contradiction witness against the two families.
bool verify_witness(const ZeroContradiction& witness, const StateFamily& source,
                    const StateFamily& target, const Tolerances& tol = {});

/// Either a completion problem or an immediate zero-vs-nonzero contradiction.
struct TransformProblem {
  std::optional<CompletionProblem> problem;
  std::optional<ZeroContradiction> contradiction;

  bool immediately_infeasible() const { return contradiction.has_value(); }
};

enum class Feasibility { Feasible, Infeasible, Undecided };

std::string_view to_string(Feasibility verdict);

struct SolveOptions {
  std::size_t max_iter = 10000;
  double conv_tol = 1e-10;
};

struct SolveReport {
  Feasibility verdict = Feasibility::Undecided;
  std::optional<Matrix> completion;  // set iff feasible
  std::size_t iterations = 0;
  double residual = 0.0;
  std::optional<InfeasibilityWitness> witness;  // set iff infeasible
};

/// Throws LengthMismatch.
TransformProblem transform_problem(const StateFamily& source, const StateFamily& target,
                                   const Tolerances& tol = {});

/// transform_problem(psi (x) alpha, psi (x) psi).
TransformProblem clone_problem(const StateFamily& psi, const StateFamily& alpha,
                               const Tolerances& tol = {});

/**
 * Decide a completion problem.
 *
 * Every maximal set of mutually fixed indices (a clique of the mask) is
 * checked first; a negative eigenvalue below -eps_psd * max(1, ||.||) there
 * certifies infeasibility. Otherwise alternating projections run between the
 * PSD cone and the affine set of matrices matching the fixed entries,
 * starting with free entries at zero. An affine iterate that is PSD within
 * the same floor is re-validated and returned as the completion. If
 * max_iter is reached, the verdict is Undecided.
 */
SolveReport solve(const CompletionProblem& problem, const Tolerances& tol = {},
                  const SolveOptions& options = {});

/// As above; an immediate contradiction yields Infeasible with that witness.
SolveReport solve(const TransformProblem& problem, const Tolerances& tol = {},
                  const SolveOptions& options = {});

/// True if `m` is a valid completion: PSD within eps_psd, unit diagonal
/// and fixed entries matched within 1e-8.
bool is_valid_completion(const Matrix& m, const CompletionProblem& problem,
                         const Tolerances& tol = {});

/// Builds the unitary carrying source_i -> target_i (x) C_i, where the C_i
/// realize a feasible completion M as their Gram matrix.
LinkingUnitary realize_transform(const StateFamily& source, const StateFamily& target,
                                 const Matrix& completion, const Tolerances& tol = {});

}  // namespace noclone
