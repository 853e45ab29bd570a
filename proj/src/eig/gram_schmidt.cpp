// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "saddlescape/eig/eigensolve.hpp"

namespace saddlescape {

Matrix gram_schmidt(const Matrix& V) {
  Matrix Q = V;
  const int k = static_cast<int>(Q.cols());
  for (int i = 0; i < k; ++i) {
    const double norm_before = Q.col(i).norm();
    // two MGS passes against the already-finished columns
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        Q.col(i) -= Q.col(j).dot(Q.col(i)) * Q.col(j);
      }
    }
    const double norm_after = Q.col(i).norm();
    if (!(norm_after > 1e-12 * std::max(1.0, norm_before)) || !std::isfinite(norm_after)) {
      throw RankDeficiencyError("gram_schmidt: column " + std::to_string(i) +
                                " is linearly dependent on the preceding columns");
    }
    Q.col(i) /= norm_after;
  }
  return Q;
}

}  // namespace saddlescape
