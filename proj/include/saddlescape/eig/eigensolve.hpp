// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "saddlescape/core/landscape.hpp"
#include "saddlescape/core/types.hpp"
#include "saddlescape/eig/hv_operator.hpp"

namespace saddlescape {

/// Result of one eigensolver call: the k algebraically smallest eigenpairs.
struct EigenResult {
  Matrix vectors;    // dim x k, orthonormal columns
  Vector values;     // k entries, ascending
  Vector residuals;  // ||H v_i - lambda_i v_i||_2
  int inner_iters_used = 0;
  bool dropped_direction_block = false;  // LOBPCG conditioning fallback fired
};

/// Modified Gram-Schmidt with one re-orthogonalization pass; preserves the
/// span and column order. Throws RankDeficiencyError naming the offending
/// column when a pivot falls below the relative threshold 1e-12.
Matrix gram_schmidt(const Matrix& V);

struct SirqitOpts {
  int sweeps = 1;
  double zeta = 1e-3;
};

/// Simultaneous Rayleigh-quotient minimization sweeps with deflation against
/// the leading columns. Each sweep updates every column of the warm start in
/// order, then re-orthonormalizes; Rayleigh quotients are returned ascending
/// with the columns permuted to match.
EigenResult eigensol_sirqit(const HvOperator& H, const Matrix& V0, const SirqitOpts& opts);

struct LobpcgOpts {
  int inner_iters = 20;
  double tol = 1e-10;
};

/// Unpreconditioned block LOBPCG on [X, residuals, previous directions] with
/// Rayleigh-Ritz on the joint subspace each inner iteration. An
/// ill-conditioned Ritz basis drops the direction block for that iteration
/// (recorded in the result), never aborts.
EigenResult eigensol_lobpcg(const HvOperator& H, const Matrix& V0, const LobpcgOpts& opts);

/// Full symmetric eigendecomposition; returns the k algebraically smallest
/// pairs. Requires a symmetric input (relative tolerance 1e-10) and
/// dim <= 5000.
EigenResult eigensol_dense(const Matrix& H, int k);

/// Deterministic tie-break: flips each column's sign so its largest-magnitude
/// component (lowest index on ties) is positive.
void fix_column_signs(Matrix& V);

}  // namespace saddlescape
