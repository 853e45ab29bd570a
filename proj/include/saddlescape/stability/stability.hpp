// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "saddlescape/core/landscape.hpp"
#include "saddlescape/core/types.hpp"

namespace saddlescape {

/// Relaxation parameters of the continuous system (position, momentum,
/// frame, dimer length).
struct ContinuousParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double zeta = 1.0;
};

/// Candidate steady state: momentum and dimer length sit at their limits
/// m = 0 and l = 0; only the position and frame vary.
struct SteadyState {
  Vector x;
  Matrix V;  // dim x k orthonormal frame
};

struct SpectrumReport {
  std::vector<std::complex<double>> eigvals;  // full Jacobian spectrum, dim*(k+2)+1 entries
  double max_real = 0.0;
  bool stable = false;
  /// alpha1^2 <= 4 alpha2 mu_star with mu_star = min |v_i^T H v_i| over the frame.
  bool hypothesis_satisfied = false;
  double mu_star = 0.0;
  /// Unstable Rayleigh quotients closer than 1e-8: the strict-ordering
  /// assumption is violated and the verdict may be unreliable.
  bool degenerate_gap_warning = false;
};

/// Assembles the Jacobian of the continuous dynamics at a steady state in the
/// l -> 0 limit, block rows ordered (x, m, v_1..v_k, l). Requires a dense
/// Hessian and a steady state (gradient norm and frame eigen-residuals at
/// most 1e-8). The frame-position coupling uses central differences of the
/// analytic Hessian; every other block is assembled in closed form.
Matrix assemble_jacobian(const EnergyLandscape& land, const SteadyState& state, const ContinuousParams& cp);

/// Full nonsymmetric eigensolve of the assembled Jacobian; stable means every
/// eigenvalue has real part below -tol_margin.
SpectrumReport check_linear_stability(const EnergyLandscape& land, const SteadyState& state,
                                      const ContinuousParams& cp, double tol_margin = 1e-8);

}  // namespace saddlescape
