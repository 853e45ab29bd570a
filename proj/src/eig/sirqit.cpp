// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "saddlescape/eig/eigensolve.hpp"

namespace saddlescape {

namespace {

// Rayleigh quotients, ascending sort with matching column permutation,
// residuals from the supplied H applications.
EigenResult finalize(const HvOperator& H, const Matrix& V, int inner_iters_used) {
  const int k = static_cast<int>(V.cols());
  Matrix HV(V.rows(), k);
  Vector lam(k);
  for (int i = 0; i < k; ++i) {
    HV.col(i) = H.apply(V.col(i));
    lam[i] = V.col(i).dot(HV.col(i));
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lam[a] < lam[b]; });

  EigenResult r;
  r.vectors.resize(V.rows(), k);
  r.values.resize(k);
  r.residuals.resize(k);
  for (int i = 0; i < k; ++i) {
    r.vectors.col(i) = V.col(order[i]);
    r.values[i] = lam[order[i]];
    r.residuals[i] = (HV.col(order[i]) - lam[order[i]] * V.col(order[i])).norm();
  }
  fix_column_signs(r.vectors);
  r.inner_iters_used = inner_iters_used;
  return r;
}

}  // namespace

EigenResult eigensol_sirqit(const HvOperator& H, const Matrix& V0, const SirqitOpts& opts) {
  const int k = static_cast<int>(V0.cols());
  if (k == 0) {
    EigenResult r;
    r.vectors = Matrix::Zero(V0.rows(), 0);
    r.values = Vector::Zero(0);
    r.residuals = Vector::Zero(0);
    return r;
  }
  if (V0.rows() != H.dim()) throw DimensionError("eigensol_sirqit: frame dimension mismatch");
  if (!(opts.zeta > 0.0)) throw Error("eigensol_sirqit: zeta must be positive");

  Matrix V = V0;
  for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
    for (int i = 0; i < k; ++i) {
      const Vector hv = H.apply(V.col(i));
      Vector w = hv - V.col(i).dot(hv) * V.col(i);
      for (int j = 0; j < i; ++j) {
        w -= 2.0 * V.col(j).dot(hv) * V.col(j);
      }
      V.col(i) -= opts.zeta * w;
      if (!V.col(i).allFinite()) {
        throw DivergenceError("eigensol_sirqit: non-finite update in column " + std::to_string(i) +
                              "; try a smaller zeta");
      }
    }
    try {
      V = gram_schmidt(V);
    } catch (const RankDeficiencyError& e) {
      // columns collapsed onto each other: the sweep diverged
      throw DivergenceError(std::string("eigensol_sirqit: ") + e.what() + "; try a smaller zeta");
    }
  }
  return finalize(H, V, opts.sweeps);
}

}  // namespace saddlescape
