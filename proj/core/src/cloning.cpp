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

#include "noclone/cloning.hpp"

#include <cmath>
#include <sstream>

namespace noclone {

namespace {

void require_same_size(const StateFamily& a, const StateFamily& b) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "families have " << a.size() << " and " << b.size() << " members";
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
}

void require_no_orthogonal_pair(const Matrix& g, const Tolerances& tol) {
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = i + 1; j < g.cols(); ++j) {
      if (std::abs(g(i, j)) <= tol.eps_orth) {
        std::ostringstream msg;
        msg << "psi_" << i << " and psi_" << j << " are orthogonal (|overlap| = "
            << std::abs(g(i, j)) << "); use the completion solver";
        throw Error(ErrorKind::OrthogonalPairPresent, msg.str());
      }
    }
  }
}

}  // namespace

std::vector<double> CloneCertificate::ancilla_clone_fidelities(const StateFamily& psi,
                                                               const StateFamily& alpha) const {
  std::vector<double> out;
  for (Index i = 0; i < psi.size(); ++i) {
    const Vector produced = ancilla_map.apply(alpha[i].amplitudes());
    out.push_back(marginal_fidelity(produced, psi[i].amplitudes(), residues.dim()));
  }
  return out;
}

std::vector<double> CloneCertificate::channel_fidelities(const StateFamily& psi,
                                                         const StateFamily& alpha) const {
  std::vector<double> out;
  for (Index i = 0; i < psi.size(); ++i) {
    const Vector produced = dilated_unitary.apply(kron(psi[i].amplitudes(), alpha[i].amplitudes()));
    const Vector two_copies = kron(psi[i].amplitudes(), psi[i].amplitudes());
    out.push_back(marginal_fidelity(produced, two_copies, residues.dim()));
  }
  return out;
}

SupplementMatrix supplement_matrix(const StateFamily& psi, const StateFamily& alpha,
                                   const Tolerances& tol) {
  require_same_size(psi, alpha);
  const Matrix gp = gram(psi).entries();
  require_no_orthogonal_pair(gp, tol);
  const Matrix ga = gram(alpha).entries();
  return SupplementMatrix(ga.cwiseQuotient(gp));
}

StateFamily residue_family(const SupplementMatrix& m, const Tolerances& tol) {
  const Matrix coords = psd_factor(m.entries(), tol);
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(coords.cols()));
  for (Index i = 0; i < coords.cols(); ++i) {
    Vector v = coords.col(i);
    // M_ii = 1 up to the inputs' normalization slack.
    v.normalize();
    out.emplace_back(std::move(v), "C" + std::to_string(i));
  }
  return StateFamily(std::move(out));
}

LinkingUnitary ancilla_to_clone(const StateFamily& psi, const StateFamily& alpha,
                                const StateFamily& residues, const Tolerances& tol) {
  return unitary_linking(alpha, tensor(psi, residues), tol);
}

LinkingUnitary clone_channel(const StateFamily& psi, const StateFamily& alpha,
                             const StateFamily& residues, const Tolerances& tol) {
  return unitary_linking(tensor(psi, alpha), tensor(tensor(psi, psi), residues), tol);
}

CloneVerdict clone_feasible_pure(const StateFamily& psi, const StateFamily& alpha,
                                 const Tolerances& tol) {
  const SupplementMatrix m = supplement_matrix(psi, alpha, tol);
  const PsdCheck check = is_psd(m.entries(), tol);
  if (!check.psd) return CloneVerdict::infeasible(check.min_eigenvalue);

  StateFamily residues = residue_family(m, tol);
  LinkingUnitary dilated = clone_channel(psi, alpha, residues, tol);
  LinkingUnitary ancilla = ancilla_to_clone(psi, alpha, residues, tol);
  return CloneVerdict::feasible(
      CloneCertificate{std::move(residues), std::move(dilated), std::move(ancilla)});
}

ExtendedFamilies extend_over_ensembles(const StateFamily& psi, std::span<const MixedState> rhos,
                                       const Tolerances& tol) {
  if (static_cast<Index>(rhos.size()) != psi.size()) {
    std::ostringstream msg;
    msg << psi.size() << " target states but " << rhos.size() << " ancilla densities";
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  std::vector<PureState> ext_psi;
  std::vector<PureState> ext_alpha;
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < psi.size(); ++i) {
    const Ensemble ens = ensemble_of(rhos[static_cast<std::size_t>(i)], tol);
    for (std::size_t k = 0; k < ens.components.size(); ++k) {
      ext_psi.push_back(psi[i]);
      ext_alpha.push_back(ens.components[k]);
      pairs.emplace_back(i, static_cast<Index>(k));
    }
  }
  return {StateFamily(std::move(ext_psi)), StateFamily(std::move(ext_alpha)), std::move(pairs)};
}

CloneVerdict clone_feasible_mixed(const StateFamily& psi, std::span<const MixedState> rhos,
                                  const Tolerances& tol) {
  require_no_orthogonal_pair(gram(psi).entries(), tol);
  const ExtendedFamilies ext = extend_over_ensembles(psi, rhos, tol);
  return clone_feasible_pure(ext.psi, ext.alpha, tol);
}

ClassicalAudit classical_ancilla_audit(const StateFamily& psi, std::span<const MixedState> rhos,
                                       const Tolerances& tol) {
  ClassicalAudit report;
  double worst_commutator = 0.0;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    for (std::size_t j = i + 1; j < rhos.size(); ++j) {
      const Matrix& a = rhos[i].density();
      const Matrix& b = rhos[j].density();
      worst_commutator = std::max(worst_commutator, (a * b - b * a).norm());
    }
  }
  report.commuting = worst_commutator <= tol.eps_gram;
  report.feasible = clone_feasible_mixed(psi, rhos, tol).is_feasible();

  report.supports_orthogonal = true;
  for (Index i = 0; i < psi.size(); ++i) {
    for (Index j = i + 1; j < psi.size(); ++j) {
      const double distance = (psi[i].amplitudes() - psi[j].amplitudes()).norm();
      if (distance <= tol.eps_gram) continue;
      const double overlap = (rhos[static_cast<std::size_t>(i)].density() *
                              rhos[static_cast<std::size_t>(j)].density())
                                 .trace()
                                 .real();
      if (overlap > tol.eps_gram) report.supports_orthogonal = false;
    }
  }
  return report;
}

bool two_state_oracle(const StateFamily& psi, const StateFamily& alpha, const Tolerances& tol) {
  if (psi.size() != 2 || alpha.size() != 2) {
    throw Error(ErrorKind::WrongArity, "two_state_oracle needs exactly two states per family");
  }
  const double psi_overlap = std::abs(inner(psi[0], psi[1]));
  if (psi_overlap <= tol.eps_orth) {
    throw Error(ErrorKind::OrthogonalPairPresent, "psi_0 and psi_1 are orthogonal");
  }
  return std::abs(inner(alpha[0], alpha[1])) <= psi_overlap + tol.eps_gram;
}

}  // namespace noclone
