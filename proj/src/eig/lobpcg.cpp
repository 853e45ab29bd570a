// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "saddlescape/eig/eigensolve.hpp"

namespace saddlescape {

namespace {

struct RitzBasis {
  Matrix weights;  // |S| x k, Ritz coefficients of the k smallest pairs
  Vector values;   // k smallest Ritz values, ascending
  bool ok = false;
};

// Rayleigh-Ritz on the (possibly ill-conditioned) basis S with H*S given.
// Whitens through the eigendecomposition of S^T S, dropping directions whose
// singular value falls below the relative cutoff.
RitzBasis rayleigh_ritz(const Matrix& S, const Matrix& HS, int k, double cond_cutoff) {
  RitzBasis out;
  const Matrix M = S.transpose() * S;
  Eigen::SelfAdjointEigenSolver<Matrix> em(M);
  if (em.info() != Eigen::Success) return out;
  const Vector sig = em.eigenvalues();
  const double smax = sig[sig.size() - 1];
  if (!(smax > 0.0) || !std::isfinite(smax)) return out;

  int first = 0;
  while (first < sig.size() && !(sig[first] > cond_cutoff * smax)) ++first;
  const int kept = static_cast<int>(sig.size()) - first;
  if (kept < k) return out;

  Matrix W(S.cols(), kept);
  for (int j = 0; j < kept; ++j) {
    W.col(j) = em.eigenvectors().col(first + j) / std::sqrt(sig[first + j]);
  }
  Matrix A = S.transpose() * HS;
  A = 0.5 * (A + A.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> ea(W.transpose() * A * W);
  if (ea.info() != Eigen::Success) return out;

  out.weights = W * ea.eigenvectors().leftCols(k);
  out.values = ea.eigenvalues().head(k);
  out.ok = true;
  return out;
}

EigenResult finalize(const Matrix& X, const Matrix& HX, int iters, bool dropped) {
  const int k = static_cast<int>(X.cols());
  Vector lam(k);
  for (int i = 0; i < k; ++i) lam[i] = X.col(i).dot(HX.col(i));
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lam[a] < lam[b]; });

  EigenResult r;
  r.vectors.resize(X.rows(), k);
  r.values.resize(k);
  r.residuals.resize(k);
  for (int i = 0; i < k; ++i) {
    r.vectors.col(i) = X.col(order[i]);
    r.values[i] = lam[order[i]];
    r.residuals[i] = (HX.col(order[i]) - r.values[i] * X.col(order[i])).norm();
  }
  fix_column_signs(r.vectors);
  r.inner_iters_used = iters;
  r.dropped_direction_block = dropped;
  return r;
}

}  // namespace

EigenResult eigensol_lobpcg(const HvOperator& H, const Matrix& V0, const LobpcgOpts& opts) {
  const int d = H.dim();
  const int k = static_cast<int>(V0.cols());
  if (k == 0) {
    EigenResult r;
    r.vectors = Matrix::Zero(d, 0);
    r.values = Vector::Zero(0);
    r.residuals = Vector::Zero(0);
    return r;
  }
  if (V0.rows() != d) throw DimensionError("eigensol_lobpcg: frame dimension mismatch");

  if (d < 3 * k) {
    // subspace too small for the three-block iteration; densify and solve exactly
    Matrix Hd(d, d);
    Vector e = Vector::Zero(d);
    for (int j = 0; j < d; ++j) {
      e[j] = 1.0;
      Hd.col(j) = H.apply(e);
      e[j] = 0.0;
    }
    return eigensol_dense(0.5 * (Hd + Hd.transpose()), k);
  }

  Matrix X = V0;
  Matrix HX(d, k);
  for (int i = 0; i < k; ++i) HX.col(i) = H.apply(X.col(i));

  Matrix P(d, 0), HP(d, 0);
  double norm_est = 0.0;
  bool dropped_any = false;
  int t = 0;

  for (t = 1; t <= opts.inner_iters; ++t) {
    Vector lam(k);
    for (int i = 0; i < k; ++i) lam[i] = X.col(i).dot(HX.col(i));
    norm_est = std::max(norm_est, lam.cwiseAbs().maxCoeff());

    Matrix R(d, k);
    double max_res = 0.0;
    for (int i = 0; i < k; ++i) {
      R.col(i) = HX.col(i) - lam[i] * X.col(i);
      max_res = std::max(max_res, R.col(i).norm());
    }
    if (max_res <= opts.tol * std::max(norm_est, 1e-30)) break;
    if (!R.allFinite()) throw DivergenceError("eigensol_lobpcg: non-finite residual block");

    // normalized residual block; converged columns drop out
    int nr = 0;
    Matrix Rn(d, k), HRn(d, k);
    for (int i = 0; i < k; ++i) {
      const double n = R.col(i).norm();
      if (n > 1e-300) {
        Rn.col(nr) = R.col(i) / n;
        HRn.col(nr) = H.apply(Rn.col(nr));
        ++nr;
      }
    }
    Rn.conservativeResize(d, nr);
    HRn.conservativeResize(d, nr);

    Matrix S(d, k + nr + P.cols());
    Matrix HS(d, S.cols());
    S << X, Rn, P;
    HS << HX, HRn, HP;

    RitzBasis rb = rayleigh_ritz(S, HS, k, 1e-12);
    if (!rb.ok && P.cols() > 0) {
      // degraded basis: drop the direction block this iteration
      dropped_any = true;
      S.conservativeResize(d, k + nr);
      HS.conservativeResize(d, k + nr);
      rb = rayleigh_ritz(S, HS, k, 1e-12);
    }
    if (!rb.ok) break;  // basis degenerate beyond repair; return current Ritz pairs

    Matrix Cx = rb.weights.topRows(k);
    Matrix Crp = rb.weights.bottomRows(rb.weights.rows() - k);

    Matrix Xn = S.leftCols(k) * Cx + S.rightCols(S.cols() - k) * Crp;
    Matrix HXn = HS.leftCols(k) * Cx + HS.rightCols(S.cols() - k) * Crp;
    Matrix Pn = S.rightCols(S.cols() - k) * Crp;
    Matrix HPn = HS.rightCols(S.cols() - k) * Crp;

    // rescale direction columns; drop vanished ones
    int keep = 0;
    for (int j = 0; j < Pn.cols(); ++j) {
      const double n = Pn.col(j).norm();
      if (n > 1e-300 && std::isfinite(n)) {
        Pn.col(keep) = Pn.col(j) / n;
        HPn.col(keep) = HPn.col(j) / n;
        ++keep;
      }
    }
    Pn.conservativeResize(d, keep);
    HPn.conservativeResize(d, keep);

    X = std::move(Xn);
    HX = std::move(HXn);
    P = std::move(Pn);
    HP = std::move(HPn);

    // whitened Ritz vectors are orthonormal up to roundoff; repair drift
    const double ortho_err = (X.transpose() * X - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (ortho_err > 1e-12) {
      X = gram_schmidt(X);
      for (int i = 0; i < k; ++i) HX.col(i) = H.apply(X.col(i));
    }
  }

  return finalize(X, HX, std::min(t, opts.inner_iters), dropped_any);
}

}  // namespace saddlescape
