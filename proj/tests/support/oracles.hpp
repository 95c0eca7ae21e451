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

// Test-only reference computations. Nothing here calls into the library's
// eigen/factorization paths, so they can serve as independent checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Eigenvalues of the 2x2 Hermitian [[a, b], [conj(b), c]] from the
/// characteristic polynomial, descending.
inline std::pair<double, double> eig2(double a, Complex b, double c) {
  const double mean = 0.5 * (a + c);
  const double disc = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  return {mean + disc, mean - disc};
}

/// Determinant by cofactor expansion (small matrices only).
inline Complex det(const Matrix& m) {
  const auto n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  Complex total = 0.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Matrix minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::Index cc = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, cc++) = m(i, j);
      }
    }
    total += (col % 2 == 0 ? 1.0 : -1.0) * m(0, col) * det(minor);
  }
  return total;
}

/// PSD by Sylvester's criterion over *all* principal minors (a Hermitian
/// matrix is PSD iff every principal minor is >= 0). `slack` absorbs
/// round-off.
inline bool psd_by_minors(const Matrix& m, double slack = 1e-12) {
  const auto n = static_cast<int>(m.rows());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<Eigen::Index> idx;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) idx.push_back(k);
    Matrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = m(idx[a], idx[b]);
    if (det(sub).real() < -slack) return false;
  }
  return true;
}

/// <a|b> written out as a loop.
inline Complex braket(const Vector& a, const Vector& b) {
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) sum += std::conj(a(k)) * b(k);
  return sum;
}

inline Matrix gram_loop(const std::vector<Vector>& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = braket(states[i], states[j]);
  return g;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline Matrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return (m + m.adjoint()) * 0.5;
}

inline Matrix random_psd(Eigen::Index n, Eigen::Index rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(n, rank);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a * a.adjoint();
}

}  // namespace oracle
