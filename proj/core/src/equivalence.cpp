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

#include "noclone/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace noclone {

namespace {

Matrix padded_columns(const StateFamily& family, Index dim) {
  Matrix out = Matrix::Zero(dim, family.size());
  out.topRows(family.dim()) = family.columns();
  return out;
}

// Polar factor of a nearly-isometric matrix; removes the round-off that
// Lambda^{-1/2} amplifies on small eigenvalues.
Matrix nearest_isometry(const Matrix& p) {
  if (p.cols() == 0) return p;
  Eigen::JacobiSVD<Matrix> svd(p, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double max_column_residual(const Matrix& u, const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.cols(); ++i) worst = std::max(worst, (u * a.col(i) - b.col(i)).norm());
  return worst;
}

}  // namespace

Vector LinkingUnitary::apply(const Vector& v) const { return matrix * pad(v, embed_dim); }

bool grams_equal(const GramMatrix& g1, const GramMatrix& g2, const Tolerances& tol) {
  if (g1.size() != g2.size()) {
    std::ostringstream msg;
    msg << "Gram matrices are " << g1.size() << "x" << g1.size() << " and " << g2.size() << "x"
        << g2.size();
    throw Error(ErrorKind::SizeMismatch, msg.str());
  }
  return max_abs(g1.entries() - g2.entries()) <= tol.eps_gram;
}

LinkingUnitary unitary_linking(const StateFamily& a, const StateFamily& b, const Tolerances& tol) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "families have " << a.size() << " and " << b.size() << " members";
    throw Error(ErrorKind::LengthMismatch, msg.str());
  }
  const GramMatrix ga = gram(a);
  const GramMatrix gb = gram(b);
  if (!grams_equal(ga, gb, tol)) {
    std::ostringstream msg;
    msg << "max Gram entry difference " << max_abs(ga.entries() - gb.entries())
        << " exceeds eps_gram " << tol.eps_gram;
    throw Error(ErrorKind::GramMismatch, msg.str());
  }
  const Index rank_a = numerical_rank(ga.entries(), tol);
  const Index rank_b = numerical_rank(gb.entries(), tol);
  if (rank_a != rank_b) {
    std::ostringstream msg;
    msg << "numerical ranks " << rank_a << " and " << rank_b << " differ";
    throw Error(ErrorKind::NumericalRankInconsistency, msg.str());
  }

  const Index dim = std::max(a.dim(), b.dim());
  const Matrix cols_a = padded_columns(a, dim);
  const Matrix cols_b = padded_columns(b, dim);

  const Matrix common = (ga.entries() + gb.entries()) * 0.5;
  const Matrix coords = psd_factor(common, tol);  // r x n, common = coords^dagger coords
  const Index rank = coords.rows();

  // coords = Lambda^{1/2} V^dagger, so the right inverse is V Lambda^{-1/2}
  // = coords^dagger Lambda^{-1}.
  const Eigen::VectorXd lambda = (coords * coords.adjoint()).diagonal().real();
  Matrix right_inverse = coords.adjoint();
  for (Index k = 0; k < rank; ++k) right_inverse.col(k) /= lambda(k);

  const Matrix iso_a = nearest_isometry(cols_a * right_inverse);
  const Matrix iso_b = nearest_isometry(cols_b * right_inverse);

  const double fit_a = (iso_a * coords - cols_a).colwise().norm().maxCoeff();
  const double fit_b = (iso_b * coords - cols_b).colwise().norm().maxCoeff();
  if (std::max(fit_a, fit_b) > kLinkResidualBound) {
    std::ostringstream msg;
    msg << "least-squares fit residual " << std::max(fit_a, fit_b) << " exceeds "
        << kLinkResidualBound;
    throw Error(ErrorKind::NumericalRankInconsistency, msg.str());
  }

  const Matrix q_a = orthonormal_extension(iso_a, dim);
  const Matrix q_b = orthonormal_extension(iso_b, dim);

  LinkingUnitary out;
  out.embed_dim = dim;
  out.matrix = q_b * q_a.adjoint();
  out.residual = max_column_residual(out.matrix, cols_a, cols_b);
  if (out.residual > kLinkResidualBound) {
    std::ostringstream msg;
    msg << "link residual " << out.residual << " exceeds " << kLinkResidualBound
        << " although Gram matrices agree within eps_gram";
    throw Error(ErrorKind::GramMismatch, msg.str());
  }
  return out;
}

LinkingReport verify_linking(const LinkingUnitary& u, const StateFamily& a, const StateFamily& b) {
  const Index dim = u.matrix.rows();
  if (u.matrix.cols() != dim || a.dim() > dim || b.dim() > dim) {
    throw Error(ErrorKind::DimensionMismatch, "families do not fit the unitary's dimension");
  }
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "family sizes differ");
  return {unitarity_defect(u.matrix),
          max_column_residual(u.matrix, padded_columns(a, dim), padded_columns(b, dim))};
}

}  // namespace noclone
