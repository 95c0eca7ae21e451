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

#include "noclone/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace noclone::sampling {

namespace {

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return out;
}

}  // namespace

Matrix haar_unitary(Index dim, Rng& rng) {
  const Matrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

PureState random_state(Index dim, Rng& rng, std::string label) {
  Vector v = ginibre(dim, 1, rng).col(0);
  v.normalize();
  return PureState(std::move(v), std::move(label));
}

StateFamily random_family(Index n, Index dim, Rng& rng) {
  std::vector<PureState> members;
  for (Index i = 0; i < n; ++i) members.push_back(random_state(dim, rng, "s" + std::to_string(i)));
  return StateFamily(std::move(members));
}

StateFamily random_nonorthogonal_family(Index n, Index dim, double min_overlap, Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    StateFamily family = random_family(n, dim, rng);
    const Matrix g = gram(family).entries();
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i) {
      for (Index j = i + 1; j < n && ok; ++j) ok = std::abs(g(i, j)) > min_overlap;
    }
    if (ok) return family;
  }
  throw std::runtime_error("rejection sampling for a non-orthogonal family did not terminate");
}

MixedState random_mixed(Index dim, Index rank, Rng& rng) {
  const Matrix a = ginibre(dim, rank, rng);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) * 0.5;
  return MixedState(std::move(rho));
}

StateFamily random_phases(const StateFamily& family, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<PureState> out;
  for (const auto& s : family) {
    out.emplace_back(Vector(s.amplitudes() * std::polar(1.0, angle(rng))), s.label());
  }
  return StateFamily(std::move(out));
}

StateFamily rotate(const StateFamily& family, const Matrix& u) {
  std::vector<PureState> out;
  for (const auto& s : family) out.emplace_back(Vector(u * s.amplitudes()), s.label());
  return StateFamily(std::move(out));
}

}  // namespace noclone::sampling
