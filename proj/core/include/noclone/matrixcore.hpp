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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace noclone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/**
 * Error categories raised by the library. Every failure surfaces as a
 * noclone::Error carrying one of these so callers (and the CLI) can map
 * them onto exit codes without parsing messages.
 */
enum class ErrorKind {
  NotHermitian,
  NonFinite,
  NotPSD,
  NotOrthonormal,
  NotNormalized,
  NotUnitTrace,
  DimensionMismatch,
  LengthMismatch,
  SizeMismatch,
  EmptyFamily,
  InvalidTolerance,
  GramMismatch,
  NumericalRankInconsistency,
  OrthogonalPairPresent,
  WrongArity,
  EnvTooSmall,
  NotADeleter,
  OutOfSpan,
  MalformedProblem,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical tolerance policy shared by every analysis.
struct Tolerances {
  double eps_gram = 1e-8;   // elementwise Gram equality
  double eps_psd = 1e-9;    // eigenvalue floor, relative to the matrix norm
  double eps_rank = 1e-10;  // rank cutoff, relative to the matrix norm
  double eps_orth = 1e-10;  // minimum |overlap| for a non-orthogonal pair
  double eps_norm = 1e-9;   // normalization slack

  /// Throws InvalidTolerance unless all fields are positive and
  /// eps_rank <= eps_gram.
  void validate() const;

  /// Sets eps_gram to `eps_gram` and rescales the others by the same factor.
  Tolerances scaled_to(double eps_gram) const;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns, unitary
};

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

bool all_finite(const Matrix& m);

/// Largest absolute entry of `m`; 0 for empty matrices.
double max_abs(const Matrix& m);

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(const Matrix& u);

/// Throws NotHermitian or NonFinite when `m` fails the Hermitian
/// precondition within eps_gram * max(1, ||m||_F).
void require_hermitian(const Matrix& m, const Tolerances& tol);

/// Eigenvalues in descending order with phase-canonical eigenvectors (the
/// largest-modulus component of each is real positive).
EigenDecomposition hermitian_eig(const Matrix& m, const Tolerances& tol = {});

/// PSD iff the smallest eigenvalue is at least -eps_psd * max(1, ||m||).
PsdCheck is_psd(const Matrix& m, const Tolerances& tol = {});

/**
 * Factor a PSD Gram matrix G (n x n) as G = R^dagger R with R of shape
 * r x n, r the numerical rank of G. Column i of R is the coordinate
 * vector v_i with <v_i|v_j> = G_ij.
 *
 * Eigenvalues in [-eps_psd * ||G||, 0) are clipped to zero; anything
 * lower throws NotPSD.
 */
Matrix psd_factor(const Matrix& gram, const Tolerances& tol = {});

/// Number of eigenvalues of `gram` above eps_rank * ||gram||.
Index numerical_rank(const Matrix& gram, const Tolerances& tol = {});

/**
 * Complete `columns` (D x k, orthonormal within 1e-9) to a D x D unitary
 * whose first k columns are the input verbatim. The remaining columns are
 * chosen by pivoted Gram-Schmidt over the standard basis, so the result is
 * deterministic.
 */
Matrix orthonormal_extension(const Matrix& columns, Index dim);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Projection onto the PSD cone (negative eigenvalues set to zero).
Matrix project_psd(const Matrix& m, const Tolerances& tol = {});

}  // namespace noclone
