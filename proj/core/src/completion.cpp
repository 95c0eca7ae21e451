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

#include "noclone/completion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace noclone {

namespace {

constexpr double kFixedEntryBound = 1e-8;

double spectral_floor(const Matrix& m, const Tolerances& tol, double* min_ev) {
  const auto eig = hermitian_eig(m, tol);
  const double norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  *min_ev = eig.values.back();
  return -tol.eps_psd * std::max(1.0, norm);
}

Matrix principal(const Matrix& m, const std::vector<Index>& idx) {
  const Index k = static_cast<Index>(idx.size());
  Matrix out(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      out(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  return out;
}

// Bron-Kerbosch with pivoting over the graph "entry (i, j) is fixed".
void maximal_cliques(const BoolMatrix& adj, std::vector<Index> current, std::vector<Index> cand,
                     std::vector<Index> excluded, std::vector<std::vector<Index>>& out) {
  if (cand.empty() && excluded.empty()) {
    out.push_back(std::move(current));
    return;
  }
  Index pivot = cand.empty() ? excluded.front() : cand.front();
  std::size_t best = 0;
  for (const auto* pool : {&cand, &excluded}) {
    for (Index u : *pool) {
      const auto deg = static_cast<std::size_t>(
          std::count_if(cand.begin(), cand.end(), [&](Index v) { return adj(u, v); }));
      if (deg > best) {
        best = deg;
        pivot = u;
      }
    }
  }
  const std::vector<Index> snapshot = cand;
  for (Index v : snapshot) {
    if (adj(pivot, v)) continue;
    std::vector<Index> next_cand, next_excluded;
    for (Index u : cand)
      if (adj(v, u)) next_cand.push_back(u);
    for (Index u : excluded)
      if (adj(v, u)) next_excluded.push_back(u);
    std::vector<Index> next = current;
    next.push_back(v);
    maximal_cliques(adj, std::move(next), std::move(next_cand), std::move(next_excluded), out);
    cand.erase(std::find(cand.begin(), cand.end(), v));
    excluded.push_back(v);
  }
}

std::optional<NegativeMinor> find_negative_minor(const CompletionProblem& problem,
                                                 const Tolerances& tol) {
  const Index n = problem.size();
  BoolMatrix adj = problem.fixed_mask;
  for (Index i = 0; i < n; ++i) adj(i, i) = false;
  std::vector<Index> all(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<Index>> cliques;
  maximal_cliques(adj, {}, all, {}, cliques);

  std::optional<NegativeMinor> worst;
  for (auto& clique : cliques) {
    if (clique.size() < 2) continue;
    std::sort(clique.begin(), clique.end());
    double min_ev = 0.0;
    const double floor = spectral_floor(principal(problem.fixed_values, clique), tol, &min_ev);
    if (min_ev < floor && (!worst || min_ev < worst->min_eigenvalue)) {
      worst = NegativeMinor{clique, min_ev};
    }
  }
  return worst;
}

void restore_fixed(Matrix& x, const CompletionProblem& problem) {
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (problem.fixed_mask(i, j)) x(i, j) = problem.fixed_values(i, j);
    }
  }
}

}  // namespace

void CompletionProblem::validate() const {
  const Index n = fixed_values.rows();
  if (fixed_values.cols() != n || fixed_mask.rows() != n || fixed_mask.cols() != n) {
    throw Error(ErrorKind::MalformedProblem, "mask and values must be square and equal-sized");
  }
  if (n == 0) throw Error(ErrorKind::MalformedProblem, "empty problem");
  if (!all_finite(fixed_values)) throw Error(ErrorKind::MalformedProblem, "non-finite entries");
  for (Index i = 0; i < n; ++i) {
    if (!fixed_mask(i, i) || std::abs(fixed_values(i, i) - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "diagonal entry " << i << " must be fixed to 1";
      throw Error(ErrorKind::MalformedProblem, msg.str());
    }
    for (Index j = i + 1; j < n; ++j) {
      if (fixed_mask(i, j) != fixed_mask(j, i)) {
        throw Error(ErrorKind::MalformedProblem, "mask is not symmetric");
      }
      if (fixed_mask(i, j) &&
          std::abs(fixed_values(i, j) - std::conj(fixed_values(j, i))) > kFixedEntryBound) {
        std::ostringstream msg;
        msg << "fixed entries (" << i << "," << j << ") and (" << j << "," << i
            << ") are not conjugate";
        throw Error(ErrorKind::MalformedProblem, msg.str());
      }
    }
  }
}

CompletionProblem CompletionProblem::all_fixed(const Matrix& values) {
  return {BoolMatrix::Constant(values.rows(), values.cols(), true), values};
}

std::string_view to_string(Feasibility verdict) {
  switch (verdict) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    case Feasibility::Undecided: return "undecided";
  }
  return "undecided";
}

std::string describe(const InfeasibilityWitness& witness) {
  std::ostringstream msg;
  if (const auto* z = std::get_if<ZeroContradiction>(&witness)) {
    msg << "zero-vs-nonzero contradiction at (" << z->i << "," << z->j
        << "): source overlap " << z->source_overlap << ", target overlap "
        << z->target_overlap;
  } else {
    const auto& m = std::get<NegativeMinor>(witness);
    msg << "fixed principal submatrix {";
    for (std::size_t k = 0; k < m.indices.size(); ++k) msg << (k ? "," : "") << m.indices[k];
    msg << "} has eigenvalue " << m.min_eigenvalue;
  }
  return msg.str();
}

bool verify_witness(const NegativeMinor& witness, const CompletionProblem& problem,
                    const Tolerances& tol) {
  for (Index a : witness.indices) {
    for (Index b : witness.indices) {
      if (!problem.fixed_mask(a, b)) return false;
    }
  }
  double min_ev = 0.0;
  const double floor = spectral_floor(principal(problem.fixed_values, witness.indices), tol, &min_ev);
  return min_ev < floor;
}

bool verify_witness(const ZeroContradiction& witness, const StateFamily& source,
                    const StateFamily& target, const Tolerances& tol) {
  const double s = std::abs(inner(source[witness.i], source[witness.j]));
  const double t = std::abs(inner(target[witness.i], target[witness.j]));
  return t <= tol.eps_orth && s > tol.eps_orth;
}

TransformProblem transform_problem(const StateFamily& source, const StateFamily& target,
                                   const Tolerances& tol) {
  if (source.size() != target.size()) {
    std::ostringstream msg;
    msg << "families have " << source.size() << " and " << target.size() << " members";
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  const Index n = source.size();
  const Matrix gs = gram(source).entries();
  const Matrix gt = gram(target).entries();
  CompletionProblem problem{BoolMatrix::Constant(n, n, false), Matrix::Zero(n, n)};
  for (Index i = 0; i < n; ++i) {
    problem.fixed_mask(i, i) = true;
    problem.fixed_values(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(gt(i, j)) > tol.eps_orth) {
        const Complex ratio = gs(i, j) / gt(i, j);
        problem.fixed_mask(i, j) = problem.fixed_mask(j, i) = true;
        problem.fixed_values(i, j) = ratio;
        problem.fixed_values(j, i) = std::conj(ratio);
      } else if (std::abs(gs(i, j)) > tol.eps_orth) {
        return {std::nullopt, ZeroContradiction{i, j, gs(i, j), gt(i, j)}};
      }
    }
  }
  return {std::move(problem), std::nullopt};
}

TransformProblem clone_problem(const StateFamily& psi, const StateFamily& alpha,
                               const Tolerances& tol) {
  return transform_problem(tensor(psi, alpha), tensor(psi, psi), tol);
}

bool is_valid_completion(const Matrix& m, const CompletionProblem& problem,
                         const Tolerances& tol) {
  const Index n = problem.size();
  if (m.rows() != n || m.cols() != n || !all_finite(m)) return false;
  for (Index i = 0; i < n; ++i) {
    if (std::abs(m(i, i) - 1.0) > kFixedEntryBound) return false;
    for (Index j = 0; j < n; ++j) {
      if (problem.fixed_mask(i, j) &&
          std::abs(m(i, j) - problem.fixed_values(i, j)) > kFixedEntryBound) {
        return false;
      }
    }
  }
  return is_psd(m, tol).psd;
}

SolveReport solve(const CompletionProblem& problem, const Tolerances& tol,
                  const SolveOptions& options) {
  problem.validate();
  SolveReport report;

  if (auto minor = find_negative_minor(problem, tol)) {
    report.verdict = Feasibility::Infeasible;
    report.residual = -minor->min_eigenvalue;
    report.witness = std::move(*minor);
    return report;
  }

  // Affine starting point: fixed entries as given, free entries at zero.
  Matrix x = problem.fixed_values;
  restore_fixed(x, problem);
  bool stalled = false;
  for (std::size_t iter = 0; iter <= options.max_iter; ++iter) {
    report.iterations = iter;
    double min_ev = 0.0;
    const double floor = spectral_floor(x, tol, &min_ev);
    if (min_ev >= floor && is_valid_completion(x, problem, tol)) {
      report.verdict = Feasibility::Feasible;
      report.residual = std::max(0.0, -min_ev);
      report.completion = x;
      return report;
    }
    if (stalled || iter == options.max_iter) break;

    const Matrix cone = project_psd(x, tol);
    Matrix next = cone;
    restore_fixed(next, problem);
    next = (next + next.adjoint()) * 0.5;
    report.residual = std::max(max_abs(cone - next), -min_ev);
    // A step this small means the sweeps have settled away from the
    // intersection; one more check, then give up.
    stalled = max_abs(next - x) <= options.conv_tol * static_cast<double>(problem.size());
    x = std::move(next);
  }
  report.verdict = Feasibility::Undecided;
  return report;
}

SolveReport solve(const TransformProblem& problem, const Tolerances& tol,
                  const SolveOptions& options) {
  if (problem.contradiction) {
    SolveReport report;
    report.verdict = Feasibility::Infeasible;
    report.witness = *problem.contradiction;
    return report;
  }
  return solve(*problem.problem, tol, options);
}

LinkingUnitary realize_transform(const StateFamily& source, const StateFamily& target,
                                 const Matrix& completion, const Tolerances& tol) {
  const Matrix coords = psd_factor(completion, tol);
  std::vector<PureState> residues;
  for (Index i = 0; i < coords.cols(); ++i) {
    Vector v = coords.col(i);
    v.normalize();
    residues.emplace_back(std::move(v), "C" + std::to_string(i));
  }
  return unitary_linking(source, tensor(target, StateFamily(std::move(residues))), tol);
}

}  // namespace noclone
