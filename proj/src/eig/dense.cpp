// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>

#include <cmath>

#include "saddlescape/eig/eigensolve.hpp"

namespace saddlescape {

void fix_column_signs(Matrix& V) {
  for (int j = 0; j < V.cols(); ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (V(arg, j) < 0.0) V.col(j) = -V.col(j);
  }
}

EigenResult eigensol_dense(const Matrix& H, int k) {
  const int d = static_cast<int>(H.rows());
  if (H.cols() != d) throw DimensionError("eigensol_dense: matrix must be square");
  if (d > 5000) throw Error("eigensol_dense: dimension " + std::to_string(d) + " exceeds the 5000 guard");
  if (k < 0 || k > d) throw DimensionError("eigensol_dense: k out of range");

  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw Error("eigensol_dense: input is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.transpose()));
  if (es.info() != Eigen::Success) throw Error("eigensol_dense: eigendecomposition failed");

  EigenResult r;
  r.vectors = es.eigenvectors().leftCols(k);
  r.values = es.eigenvalues().head(k);
  fix_column_signs(r.vectors);
  r.residuals = Vector::Zero(k);
  for (int i = 0; i < k; ++i) {
    r.residuals[i] = (H * r.vectors.col(i) - r.values[i] * r.vectors.col(i)).norm();
  }
  r.inner_iters_used = 1;
  return r;
}

}  // namespace saddlescape
