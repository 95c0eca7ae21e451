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

#include <initializer_list>
#include <string>
#include <vector>

#include "noclone/matrixcore.hpp"

namespace noclone {

/// A normalized pure state. Global phase is kept exactly as supplied.
class PureState {
 public:
  /// Throws NotNormalized if ||amplitudes|| deviates from 1 by more than
  /// eps_norm; the amplitudes are never rescaled.
  explicit PureState(Vector amplitudes, std::string label = {}, const Tolerances& tol = {});
  PureState(std::initializer_list<Complex> amplitudes, std::string label = {});

  /// Computational basis state |k> in dimension `dim`.
  static PureState basis(Index dim, Index k, std::string label = {});

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  const std::string& label() const { return label_; }
  Complex operator[](Index k) const { return amplitudes_(k); }

 private:
  Vector amplitudes_;
  std::string label_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const PureState& a, const PureState& b);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Index-aligned, nonempty list of pure states sharing one dimension.
/// Duplicates are allowed and kept.
class StateFamily {
 public:
  explicit StateFamily(std::vector<PureState> members);
  StateFamily(std::initializer_list<PureState> members);

  Index size() const { return static_cast<Index>(members_.size()); }
  Index dim() const { return members_.front().dim(); }
  const PureState& operator[](Index i) const { return members_[static_cast<std::size_t>(i)]; }
  const std::vector<PureState>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// dim x size matrix whose columns are the member amplitudes.
  Matrix columns() const;

 private:
  std::vector<PureState> members_;
};

/// Matrix of pairwise inner products, entries(i, j) = <F_i|F_j>.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix entries) : entries_(std::move(entries)) {}
  const Matrix& entries() const { return entries_; }
  Index size() const { return entries_.rows(); }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

GramMatrix gram(const StateFamily& family);

/// Member-wise Kronecker product F_i (x) G_i.
StateFamily tensor(const StateFamily& f, const StateFamily& g);

/// Kronecker product of two vectors (a is the leading factor).
Vector kron(const Vector& a, const Vector& b);

/// Density matrix: Hermitian, PSD, unit trace (checked on construction).
class MixedState {
 public:
  explicit MixedState(Matrix density, const Tolerances& tol = {});
  static MixedState from_pure(const PureState& state);
  static MixedState maximally_mixed(Index dim);

  Index dim() const { return density_.rows(); }
  const Matrix& density() const { return density_; }

 private:
  Matrix density_;
};

/// Probabilistic mixture sum_k p_k |a_k><a_k|.
struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> components;

  Matrix density() const;
};

/// Spectral decomposition: eigenvectors with eigenvalue > eps_rank, weights
/// renormalized to sum to one. Components come out in descending weight.
Ensemble ensemble_of(const MixedState& rho, const Tolerances& tol = {});

/**
 * Fidelity of the leading register of `joint` with `target` after tracing
 * out a trailing register of dimension `rest_dim`:
 *   sum_c |sum_x conj(target_x) joint[x * rest_dim + c]|^2.
 * Entries of `joint` beyond target.dim() * rest_dim (zero padding) count as
 * lost weight.
 */
double marginal_fidelity(const Vector& joint, const Vector& target, Index rest_dim);

/// True when some pair i < j has |<F_i|F_j>| <= eps_orth.
bool has_orthogonal_pair(const StateFamily& family, const Tolerances& tol = {});

/// Embeds `v` into dimension `dim` by zero padding.
Vector pad(const Vector& v, Index dim);

}  // namespace noclone
