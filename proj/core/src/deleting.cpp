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

#include "noclone/deleting.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace noclone {

Deleter::Deleter(Matrix unitary, PureState env_init, PureState blank, RegisterLayout layout)
    : unitary_(std::move(unitary)),
      env_init_(std::move(env_init)),
      blank_(std::move(blank)),
      layout_(layout) {
  const Index n = layout_.total();
  if (unitary_.rows() != n || unitary_.cols() != n) {
    std::ostringstream msg;
    msg << "unitary is " << unitary_.rows() << "x" << unitary_.cols() << ", layout needs " << n;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (env_init_.dim() != layout_.d_env || blank_.dim() != layout_.d) {
    throw Error(ErrorKind::DimensionMismatch, "env_init/blank dimensions disagree with layout");
  }
  const double defect = unitarity_defect(unitary_);
  if (defect > 1e-9) {
    std::ostringstream msg;
    msg << "deleter unitarity defect " << defect;
    throw Error(ErrorKind::NotOrthonormal, msg.str());
  }
}

Deleter swap_deleter(Index d, Index d_env) {
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "register dimension must be positive");
  if (d_env < d) {
    std::ostringstream msg;
    msg << "environment dimension " << d_env << " < register dimension " << d;
    throw Error(ErrorKind::EnvTooSmall, msg.str());
  }
  const RegisterLayout layout{d, d_env};
  const Index n = layout.total();
  Matrix u = Matrix::Zero(n, n);
  for (Index x = 0; x < d; ++x) {
    for (Index y = 0; y < d; ++y) {
      for (Index e = 0; e < d_env; ++e) {
        const Index from = (x * d + y) * d_env + e;
        const Index to = e < d ? (x * d + e) * d_env + y : from;
        u(to, from) = 1.0;
      }
    }
  }
  return Deleter(std::move(u), PureState::basis(d_env, 0, "A"), PureState::basis(d, 0, "0"),
                 layout);
}

Deleter twist(const Deleter& deleter, const Matrix& env_unitary) {
  const RegisterLayout layout = deleter.layout();
  if (env_unitary.rows() != layout.d_env || env_unitary.cols() != layout.d_env) {
    throw Error(ErrorKind::DimensionMismatch, "twist unitary must act on the environment");
  }
  const Index regs = layout.d * layout.d;
  const Matrix id = Matrix::Identity(regs, regs);
  const Matrix lift = kron(id, env_unitary);
  return Deleter(lift * deleter.unitary(), deleter.env_init(), deleter.blank(), layout);
}

DeletionAnalysis analyze_deleter(const Deleter& deleter, const StateFamily& psi,
                                 const Tolerances& tol) {
  const RegisterLayout layout = deleter.layout();
  if (psi.dim() != layout.d) {
    std::ostringstream msg;
    msg << "family dimension " << psi.dim() << " != deleter register dimension " << layout.d;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (has_orthogonal_pair(psi, tol)) {
    throw Error(ErrorKind::OrthogonalPairPresent,
                "no-deleting analysis needs a family without orthogonal pairs");
  }

  const Vector& blank = deleter.blank().amplitudes();
  const Index d = layout.d;
  const Index d_env = layout.d_env;

  std::vector<PureState> residues;
  double worst_defect = 0.0;
  for (Index i = 0; i < psi.size(); ++i) {
    const Vector& state = psi[i].amplitudes();
    const Vector out =
        deleter.unitary() * kron(kron(state, state), deleter.env_init().amplitudes());
    Vector conditional = Vector::Zero(d_env);
    for (Index x = 0; x < d; ++x) {
      for (Index y = 0; y < d; ++y) {
        const Complex w = std::conj(state(x)) * std::conj(blank(y));
        conditional += w * out.segment((x * d + y) * d_env, d_env);
      }
    }
    const double weight = conditional.squaredNorm();
    const double defect = 1.0 - weight;
    worst_defect = std::max(worst_defect, defect);
    if (defect > tol.eps_gram) {
      std::ostringstream msg;
      msg << "output for member " << i << " has form defect " << defect;
      throw Error(ErrorKind::NotADeleter, msg.str());
    }
    residues.emplace_back(conditional / std::sqrt(weight), "A" + std::to_string(i));
  }

  StateFamily env_family(std::move(residues));
  DeletionAnalysis analysis{env_family, grams_equal(gram(env_family), gram(psi), tol), {},
                            worst_defect, {}, d};
  if (!analysis.gram_preserved) {
    throw Error(ErrorKind::GramMismatch,
                "environment residues are not Gram-equivalent to the deleted family");
  }
  analysis.resurrection = unitary_linking(env_family, psi, tol);
  for (Index i = 0; i < psi.size(); ++i) {
    const Vector back = analysis.resurrection.apply(env_family[i].amplitudes());
    analysis.resurrection_fidelities.push_back(std::norm(psi[i].amplitudes().dot(back.head(d))));
  }
  return analysis;
}

PureState resurrect(const DeletionAnalysis& analysis, const PureState& env, const Tolerances& tol) {
  const StateFamily& residues = analysis.residues;
  if (env.dim() != residues.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "environment state has the wrong dimension");
  }
  const Matrix cols = residues.columns();
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol.eps_rank * std::max(1.0, sv(0))) ++rank;
  const Matrix basis = svd.matrixU().leftCols(rank);
  const Vector& v = env.amplitudes();
  const double off_span = (v - basis * (basis.adjoint() * v)).norm();
  if (off_span > tol.eps_gram) {
    std::ostringstream msg;
    msg << "environment state lies " << off_span << " outside span{A_i}";
    throw Error(ErrorKind::OutOfSpan, msg.str());
  }
  // Weight outside the first register_dim levels is at most the span
  // residual; renormalize the truncated vector.
  Vector restored = analysis.resurrection.apply(v).head(analysis.register_dim);
  restored.normalize();
  return PureState(std::move(restored), "resurrected");
}

CollapseTrace collapse_delete_demo(const StateFamily& psi, std::uint64_t seed) {
  CollapseTrace trace;
  trace.seed = seed;
  std::mt19937_64 rng(seed);
  const Index d = psi.dim();
  const Vector blank = Vector::Unit(d, 0);
  for (Index i = 0; i < psi.size(); ++i) {
    const Vector& state = psi[i].amplitudes();
    CollapseBranch branch;
    branch.member = i;
    for (Index k = 0; k < d; ++k) branch.probabilities.push_back(std::norm(state(k)));
    std::discrete_distribution<Index> born(branch.probabilities.begin(),
                                           branch.probabilities.end());
    branch.outcome = born(rng);

    // Swap |outcome> <-> |0>.
    branch.correction = Matrix::Identity(d, d);
    branch.correction.col(0).swap(branch.correction.col(branch.outcome));

    // Register 1 is untouched by measuring register 2 of a product state.
    const Vector register2 = branch.correction * Vector::Unit(d, branch.outcome);
    branch.final_state = kron(state, register2);
    branch.register1_fidelity = marginal_fidelity(branch.final_state, state, d);
    branch.register2_blank = (register2 - blank).norm() == 0.0;
    trace.branches.push_back(std::move(branch));
  }
  return trace;
}

}  // namespace noclone
