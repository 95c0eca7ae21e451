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

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "noclone/equivalence.hpp"
#include "noclone/matrixcore.hpp"
#include "noclone/states.hpp"

namespace noclone {

/// Elementwise ratio M_ij = <alpha_i|alpha_j> / <psi_i|psi_j>. Assisted
/// cloning |psi_i> (x) |alpha_i> -> |psi_i>|psi_i> is possible exactly when
/// M is PSD, in which case M is the Gram matrix of the residue states C_i.
class SupplementMatrix {
 public:
  explicit SupplementMatrix(Matrix entries) : entries_(std::move(entries)) {}
  const Matrix& entries() const { return entries_; }
  Index size() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

/// Constructive witness of feasibility.
struct CloneCertificate {
  StateFamily residues;            // C_i, Gram matrix equals M
  LinkingUnitary dilated_unitary;  // psi_i (x) alpha_i -> psi_i (x) psi_i (x) C_i
  LinkingUnitary ancilla_map;      // alpha_i -> psi_i (x) C_i

  /// Fidelity with psi_i of the clone made from alpha_i alone (apply
  /// ancilla_map, discard the residue register).
  std::vector<double> ancilla_clone_fidelities(const StateFamily& psi,
                                               const StateFamily& alpha) const;

  /// Fidelity with psi_i (x) psi_i of the two leading registers after
  /// applying dilated_unitary to psi_i (x) alpha_i.
  std::vector<double> channel_fidelities(const StateFamily& psi, const StateFamily& alpha) const;
};

class CloneVerdict {
 public:
  static CloneVerdict feasible(CloneCertificate cert) { return CloneVerdict(std::move(cert)); }
  static CloneVerdict infeasible(double min_eigenvalue) { return CloneVerdict(min_eigenvalue); }

  bool is_feasible() const { return std::holds_alternative<CloneCertificate>(witness_); }
  /// nullptr when infeasible.
  const CloneCertificate* certificate() const { return std::get_if<CloneCertificate>(&witness_); }
  /// Most negative eigenvalue of M; empty when feasible.
  std::optional<double> min_eigenvalue() const {
    if (const auto* v = std::get_if<double>(&witness_)) return *v;
    return std::nullopt;
  }

 private:
  explicit CloneVerdict(CloneCertificate cert) : witness_(std::move(cert)) {}
  explicit CloneVerdict(double ev) : witness_(ev) {}
  std::variant<CloneCertificate, double> witness_;
};

/// Throws OrthogonalPairPresent if any |<psi_i|psi_j>| <= eps_orth and
/// LengthMismatch if the families differ in size.
SupplementMatrix supplement_matrix(const StateFamily& psi, const StateFamily& alpha,
                                   const Tolerances& tol = {});

CloneVerdict clone_feasible_pure(const StateFamily& psi, const StateFamily& alpha,
                                 const Tolerances& tol = {});

/// Unit-norm residue states C_i with Gram matrix M; their dimension is the
/// numerical rank of M. Throws NotPSD.
StateFamily residue_family(const SupplementMatrix& m, const Tolerances& tol = {});

/// unitary_linking(alpha, psi (x) C): the physical map alpha_i -> psi_i once
/// the C register is discarded.
LinkingUnitary ancilla_to_clone(const StateFamily& psi, const StateFamily& alpha,
                                const StateFamily& residues, const Tolerances& tol = {});

/// unitary_linking(psi (x) alpha, psi (x) psi (x) C). The blank clone
/// register and the environment are the zero padding of the joint space.
LinkingUnitary clone_channel(const StateFamily& psi, const StateFamily& alpha,
                             const StateFamily& residues, const Tolerances& tol = {});

/// Pairs (i, k) flattened lexicographically: psi_i repeated once per
/// spectral component alpha^(i)_k of rho_i.
struct ExtendedFamilies {
  StateFamily psi;
  StateFamily alpha;
  std::vector<std::pair<Index, Index>> pairs;
};

ExtendedFamilies extend_over_ensembles(const StateFamily& psi, std::span<const MixedState> rhos,
                                       const Tolerances& tol = {});

/// Mixed ancillas: feasible iff the extended-index supplement matrix over
/// all (i, k), (j, l) is PSD. The certificate refers to the extended
/// families returned by extend_over_ensembles.
CloneVerdict clone_feasible_mixed(const StateFamily& psi, std::span<const MixedState> rhos,
                                  const Tolerances& tol = {});

struct ClassicalAudit {
  bool commuting = false;
  bool feasible = false;
  bool supports_orthogonal = false;

  /// commuting && feasible implies supports_orthogonal.
  bool implication_holds() const { return !(commuting && feasible) || supports_orthogonal; }
};

ClassicalAudit classical_ancilla_audit(const StateFamily& psi, std::span<const MixedState> rhos,
                                       const Tolerances& tol = {});

/// Closed-form n = 2 criterion |<a1|a2>| <= |<psi1|psi2>| + eps_gram.
/// Independent of the matrix path; used for cross-checking.
bool two_state_oracle(const StateFamily& psi, const StateFamily& alpha,
                      const Tolerances& tol = {});

}  // namespace noclone
