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

#include <cstdint>
#include <string>
#include <vector>

#include "noclone/equivalence.hpp"
#include "noclone/matrixcore.hpp"
#include "noclone/states.hpp"

namespace noclone {

/// Register dimensions of a deleter: two copies of dimension `d` followed
/// by an environment of dimension `d_env`.
struct RegisterLayout {
  Index d = 0;
  Index d_env = 0;
  Index total() const { return d * d * d_env; }
};

/// Candidate unitary for |psi>|psi>|A> -> |psi>|0>|A_psi>.
class Deleter {
 public:
  /// Throws DimensionMismatch on layout disagreement and NotOrthonormal
  /// when `unitary` is not unitary within 1e-9.
  Deleter(Matrix unitary, PureState env_init, PureState blank, RegisterLayout layout);

  const Matrix& unitary() const { return unitary_; }
  const PureState& env_init() const { return env_init_; }
  const PureState& blank() const { return blank_; }
  const RegisterLayout& layout() const { return layout_; }

 private:
  Matrix unitary_;
  PureState env_init_;
  PureState blank_;
  RegisterLayout layout_;
};

/**
 * Swaps register 2 with the first d levels of the environment:
 * |x>|e> -> |e>|x> for e < d, identity on environment levels e >= d.
 * Environment and blank both start in |0>. Throws EnvTooSmall if
 * d_env < d.
 */
Deleter swap_deleter(Index d, Index d_env);

/// (I (x) I (x) W) D: same action on the first two registers, environment
/// output scrambled by the unitary W.
Deleter twist(const Deleter& deleter, const Matrix& env_unitary);

struct DeletionAnalysis {
  StateFamily residues;  // A_i
  bool gram_preserved = false;
  LinkingUnitary resurrection;  // A_i -> psi_i
  double max_form_defect = 0.0;
  std::vector<double> resurrection_fidelities;
  Index register_dim = 0;  // dimension of psi
};

/**
 * Applies the deleter to |psi_i>|psi_i>|A>, checks the output has the form
 * |psi_i>|0>|A_i> (defect = 1 - |(<psi_i|<0| (x) I) out|^2), extracts the
 * conditional environment states A_i and links them back onto psi.
 *
 * Throws OrthogonalPairPresent, DimensionMismatch, NotADeleter (defect above
 * eps_gram) and GramMismatch (the principle failing numerically).
 */
DeletionAnalysis analyze_deleter(const Deleter& deleter, const StateFamily& psi,
                                 const Tolerances& tol = {});

/// Recover psi from an environment state in span{A_i}. Throws OutOfSpan.
PureState resurrect(const DeletionAnalysis& analysis, const PureState& env,
                    const Tolerances& tol = {});

struct CollapseBranch {
  Index member = 0;
  std::vector<double> probabilities;  // |<k|psi_i>|^2
  Index outcome = 0;
  Matrix correction;  // permutation taking |outcome> to |0>
  Vector final_state;  // |psi_i> (x) |0>
  double register1_fidelity = 0.0;
  bool register2_blank = false;
};

struct CollapseTrace {
  std::uint64_t seed = 0;
  std::vector<CollapseBranch> branches;
  /// Correction depends on the measured outcome, so the procedure is not a
  /// single trace-preserving completely positive map on the inputs.
  bool selective = true;
};

/// Measure register 2 of |psi_i>|psi_i> in the computational basis and
/// rotate the observed |k> to |0>. Deterministic for a fixed seed.
CollapseTrace collapse_delete_demo(const StateFamily& psi, std::uint64_t seed);

}  // namespace noclone
