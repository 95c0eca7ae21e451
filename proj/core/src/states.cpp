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

#include "noclone/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace noclone {

namespace {

void require_finite(const Vector& v, const std::string& label) {
  for (Index k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v(k).real()) || !std::isfinite(v(k).imag())) {
      throw Error(ErrorKind::NonFinite, "state '" + label + "' has NaN or Inf amplitudes");
    }
  }
}

Vector from_list(std::initializer_list<Complex> amplitudes) {
  Vector v(static_cast<Index>(amplitudes.size()));
  Index k = 0;
  for (const auto& a : amplitudes) v(k++) = a;
  return v;
}

}  // namespace

PureState::PureState(Vector amplitudes, std::string label, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
  if (amplitudes_.size() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "state '" + label_ + "' has dimension 0");
  }
  require_finite(amplitudes_, label_);
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol.eps_norm) {
    std::ostringstream msg;
    msg << "state '" << label_ << "' has norm " << norm;
    throw Error(ErrorKind::NotNormalized, msg.str());
  }
}

PureState::PureState(std::initializer_list<Complex> amplitudes, std::string label)
    : PureState(from_list(amplitudes), std::move(label)) {}

PureState PureState::basis(Index dim, Index k, std::string label) {
  return PureState(Vector::Unit(dim, k), std::move(label));
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "dimensions " << a.dim() << " and " << b.dim() << " differ";
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left side
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner(a, b)); }

StateFamily::StateFamily(std::vector<PureState> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorKind::EmptyFamily, "state family has no members");
  const Index d = members_.front().dim();
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (members_[i].dim() != d) {
      std::ostringstream msg;
      msg << "member " << i << " has dimension " << members_[i].dim() << ", family has " << d;
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
  }
}

StateFamily::StateFamily(std::initializer_list<PureState> members)
    : StateFamily(std::vector<PureState>(members)) {}

Matrix StateFamily::columns() const {
  Matrix out(dim(), size());
  for (Index i = 0; i < size(); ++i) out.col(i) = (*this)[i].amplitudes();
  return out;
}

GramMatrix gram(const StateFamily& family) {
  const Matrix cols = family.columns();
  Matrix g = cols.adjoint() * cols;
  // Exactly Hermitian with a real diagonal.
  for (Index i = 0; i < g.rows(); ++i) {
    g(i, i) = g(i, i).real();
    for (Index j = i + 1; j < g.cols(); ++j) g(j, i) = std::conj(g(i, j));
  }
  return GramMatrix(std::move(g));
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

StateFamily tensor(const StateFamily& f, const StateFamily& g) {
  if (f.size() != g.size()) {
    std::ostringstream msg;
    msg << "families have " << f.size() << " and " << g.size() << " members";
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(f.size()));
  for (Index i = 0; i < f.size(); ++i) {
    Tolerances loose;
    loose.eps_norm = 3 * loose.eps_norm;  // each factor carries its own normalization slack
    out.emplace_back(kron(f[i].amplitudes(), g[i].amplitudes()),
                     f[i].label() + "*" + g[i].label(), loose);
  }
  return StateFamily(std::move(out));
}

MixedState::MixedState(Matrix density, const Tolerances& tol) : density_(std::move(density)) {
  require_hermitian(density_, tol);
  if (density_.rows() < 1) throw Error(ErrorKind::DimensionMismatch, "density has dimension 0");
  const double trace = density_.trace().real();
  if (std::abs(trace - 1.0) > tol.eps_norm) {
    std::ostringstream msg;
    msg << "density has trace " << trace;
    throw Error(ErrorKind::NotUnitTrace, msg.str());
  }
  const auto check = is_psd(density_, tol);
  if (!check.psd) {
    std::ostringstream msg;
    msg << "density has eigenvalue " << check.min_eigenvalue;
    throw Error(ErrorKind::NotPSD, msg.str());
  }
}

MixedState MixedState::from_pure(const PureState& state) {
  return MixedState(state.amplitudes() * state.amplitudes().adjoint());
}

MixedState MixedState::maximally_mixed(Index dim) {
  return MixedState(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Matrix Ensemble::density() const {
  const Index d = components.empty() ? 0 : components.front().dim();
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const Vector& a = components[k].amplitudes();
    out += weights[k] * a * a.adjoint();
  }
  return out;
}

Ensemble ensemble_of(const MixedState& rho, const Tolerances& tol) {
  const auto eig = hermitian_eig(rho.density(), tol);
  const double norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  if (eig.values.back() < -tol.eps_psd * std::max(1.0, norm)) {
    throw Error(ErrorKind::NotPSD, "density is not positive semidefinite");
  }
  const double trace = rho.density().trace().real();
  if (std::abs(trace - 1.0) > tol.eps_norm) throw Error(ErrorKind::NotUnitTrace, "density trace != 1");

  Ensemble out;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] <= tol.eps_rank) break;
    out.weights.push_back(eig.values[k]);
    out.components.emplace_back(Vector(eig.vectors.col(static_cast<Index>(k))),
                                "component" + std::to_string(k));
  }
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= total;
  return out;
}

double marginal_fidelity(const Vector& joint, const Vector& target, Index rest_dim) {
  const Index d = target.size();
  if (d * rest_dim > joint.size()) {
    throw Error(ErrorKind::DimensionMismatch, "joint vector shorter than target x rest");
  }
  double total = 0.0;
  for (Index c = 0; c < rest_dim; ++c) {
    Complex amp = 0.0;
    for (Index x = 0; x < d; ++x) amp += std::conj(target(x)) * joint(x * rest_dim + c);
    total += std::norm(amp);
  }
  return total;
}

bool has_orthogonal_pair(const StateFamily& family, const Tolerances& tol) {
  const Matrix g = gram(family).entries();
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = i + 1; j < g.cols(); ++j) {
      if (std::abs(g(i, j)) <= tol.eps_orth) return true;
    }
  }
  return false;
}

Vector pad(const Vector& v, Index dim) {
  if (v.size() > dim) throw Error(ErrorKind::DimensionMismatch, "cannot pad to a smaller dimension");
  Vector out = Vector::Zero(dim);
  out.head(v.size()) = v;
  return out;
}

}  // namespace noclone
