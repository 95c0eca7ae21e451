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

#include "noclone/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace noclone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotUnitTrace: return "NotUnitTrace";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::GramMismatch: return "GramMismatch";
    case ErrorKind::NumericalRankInconsistency: return "NumericalRankInconsistency";
    case ErrorKind::OrthogonalPairPresent: return "OrthogonalPairPresent";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::EnvTooSmall: return "EnvTooSmall";
    case ErrorKind::NotADeleter: return "NotADeleter";
    case ErrorKind::OutOfSpan: return "OutOfSpan";
    case ErrorKind::MalformedProblem: return "MalformedProblem";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void Tolerances::validate() const {
  for (double eps : {eps_gram, eps_psd, eps_rank, eps_orth, eps_norm}) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw Error(ErrorKind::InvalidTolerance, "tolerances must be finite and positive");
    }
  }
  if (eps_rank > eps_gram) {
    throw Error(ErrorKind::InvalidTolerance, "eps_rank must not exceed eps_gram");
  }
}

Tolerances Tolerances::scaled_to(double new_eps_gram) const {
  const double factor = new_eps_gram / eps_gram;
  Tolerances out;
  out.eps_gram = new_eps_gram;
  out.eps_psd = eps_psd * factor;
  out.eps_rank = eps_rank * factor;
  out.eps_orth = eps_orth * factor;
  out.eps_norm = eps_norm * factor;
  out.validate();
  return out;
}

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  const Matrix id = Matrix::Identity(u.cols(), u.cols());
  return (u.adjoint() * u - id).norm();
}

void require_hermitian(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  if (!all_finite(m)) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol.eps_gram * std::max(1.0, m.norm())) {
    std::ostringstream msg;
    msg << "asymmetry " << asym << " exceeds tolerance";
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
}

namespace {

// Spectral norm from a descending eigenvalue list.
double spectral_norm(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& m, const Tolerances& tol) {
  require_hermitian(m, tol);
  const Index n = m.rows();
  EigenDecomposition out;
  if (n == 0) {
    out.vectors = Matrix(0, 0);
    return out;
  }
  const Matrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonFinite, "eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = n - 1 - k;
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(src);
    Vector v = solver.eigenvectors().col(src);
    Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    const Complex phase = std::abs(v(pivot)) > 0.0 ? std::conj(v(pivot)) / std::abs(v(pivot))
                                                  : Complex(1.0);
    out.vectors.col(k) = v * phase;
  }
  return out;
}

PsdCheck is_psd(const Matrix& m, const Tolerances& tol) {
  const auto eig = hermitian_eig(m, tol);
  if (eig.values.empty()) return {true, 0.0};
  const double min_ev = eig.values.back();
  const double floor = -tol.eps_psd * std::max(1.0, spectral_norm(eig.values));
  return {min_ev >= floor, min_ev};
}

Index numerical_rank(const Matrix& gram, const Tolerances& tol) {
  const auto eig = hermitian_eig(gram, tol);
  const double cutoff = tol.eps_rank * spectral_norm(eig.values);
  return static_cast<Index>(
      std::count_if(eig.values.begin(), eig.values.end(), [&](double v) { return v > cutoff; }));
}

Matrix psd_factor(const Matrix& gram, const Tolerances& tol) {
  const auto eig = hermitian_eig(gram, tol);
  const double norm = spectral_norm(eig.values);
  if (!eig.values.empty() && eig.values.back() < -tol.eps_psd * norm) {
    std::ostringstream msg;
    msg << "min eigenvalue " << eig.values.back() << " below floor " << -tol.eps_psd * norm;
    throw Error(ErrorKind::NotPSD, msg.str());
  }
  const double cutoff = tol.eps_rank * norm;
  Index rank = 0;
  while (rank < static_cast<Index>(eig.values.size()) &&
         eig.values[static_cast<std::size_t>(rank)] > cutoff) {
    ++rank;
  }
  // Rows of Lambda^{1/2} V^dagger restricted to the top-r eigenspace.
  Matrix factor(rank, gram.rows());
  for (Index k = 0; k < rank; ++k) {
    factor.row(k) = std::sqrt(eig.values[static_cast<std::size_t>(k)]) *
                    eig.vectors.col(k).adjoint();
  }
  return factor;
}

Matrix orthonormal_extension(const Matrix& columns, Index dim) {
  const Index k = columns.cols();
  if (columns.rows() != dim && k > 0) {
    std::ostringstream msg;
    msg << "columns have length " << columns.rows() << ", expected " << dim;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (k > dim) throw Error(ErrorKind::NotOrthonormal, "more columns than dimensions");
  if (k > 0) {
    const double defect = max_abs(columns.adjoint() * columns - Matrix::Identity(k, k));
    if (defect > 1e-9) {
      std::ostringstream msg;
      msg << "input columns deviate from orthonormality by " << defect;
      throw Error(ErrorKind::NotOrthonormal, msg.str());
    }
  }

  Matrix out = Matrix::Zero(dim, dim);
  if (k > 0) out.leftCols(k) = columns;
  // Column j of `rest` is e_j projected off the current span.
  Matrix rest = Matrix::Identity(dim, dim);
  if (k > 0) rest -= columns * columns.adjoint();
  for (Index filled = k; filled < dim; ++filled) {
    // Pick the standard basis vector with the largest component outside the
    // current span (ties resolve to the lowest index).
    const Eigen::VectorXd norms = rest.colwise().norm().transpose();
    Index best = 0;
    for (Index j = 1; j < dim; ++j) {
      if (norms(j) > norms(best) + 1e-12) best = j;
    }
    Vector q = rest.col(best);
    q -= out.leftCols(filled) * (out.leftCols(filled).adjoint() * q);
    q.normalize();
    out.col(filled) = q;
    rest -= q * (q.adjoint() * rest);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix project_psd(const Matrix& m, const Tolerances& tol) {
  const auto eig = hermitian_eig(m, tol);
  const Index n = m.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const double v = eig.values[static_cast<std::size_t>(k)];
    if (v > 0.0) out += v * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return out;
}

}  // namespace noclone
