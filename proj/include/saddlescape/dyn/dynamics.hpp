// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "saddlescape/core/landscape.hpp"
#include "saddlescape/core/types.hpp"
#include "saddlescape/eig/eigensolve.hpp"

namespace saddlescape {

enum class StepKind { hisd, ahisd, hisd_bb };

std::string to_string(StepKind k);
StepKind step_kind_from_string(const std::string& s);

/// Closed-form (beta, gamma) choice for a quadratic neighborhood with Hessian
/// eigenvalue magnitudes in [mu, L]:
///   sqrt(beta) = 2 / (sqrt(L) + sqrt(mu)),
///   sqrt(gamma) = 1 - 2 / (sqrt(kappa) + 1) + eps,  kappa = L / mu.
struct ParamChoice {
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double L = 0.0;
  double kappa = 1.0;
  double eps = 0.0;
};

/// Requires 0 < mu <= L and eps in (0, 1/(sqrt(kappa)+1)); throws otherwise.
ParamChoice select_parameters(double mu, double L, double eps);

/// Refreshes the spectral frame at x with the configured eigensolver, warm
/// started from `warm`. params.zeta must already be resolved (positive) for
/// the SIRQIT path; pass zeta = 0 to have it estimated on the spot.
SpectralFrame refresh_frame(const EnergyLandscape& land, const Vector& x, const SpectralFrame& warm,
                            const SolverParams& params);

/// One HiSD iteration: position update with the reflected gradient, then a
/// frame refresh at the new position. Throws DivergenceError on non-finite
/// values.
SolverState hisd_step(const EnergyLandscape& land, const SolverState& state, const SolverParams& params);

/// One A-HiSD iteration: HiSD update plus the momentum term
/// gamma * (x - x_prev).
SolverState ahisd_step(const EnergyLandscape& land, const SolverState& state, const SolverParams& params);

/// Barzilai-Borwein step size
///   min{ tau / ||grad_now||, (dx . dg) / ||dg||^2 }.
/// Negative values pass through unmodified. When both quantities are
/// unavailable (zero denominators) the result falls back to fallback_beta and
/// used_fallback is set.
struct BbStep {
  double value = 0.0;
  bool used_fallback = false;
};
BbStep bb_step_size(const Vector& grad_now, const Vector& grad_prev, const Vector& x_now, const Vector& x_prev,
                    double tau, double fallback_beta);

enum class TerminationReason { converged, max_iter, diverged };

struct RunResult {
  IterationTrace trace;
  SolverState final_state;
  TerminationReason reason = TerminationReason::max_iter;
  /// Iteration index of the last recorded iterate.
  int iterations = 0;
  int bb_fallbacks = 0;
};

/// Full outer iteration from x0: frame initialization (seeded random
/// orthonormal start plus warm-up sweeps, or the dense oracle when
/// configured), the chosen stepper until stop_tol or max_iter, and a trace
/// with one record per iterate. Divergence is a first-class outcome: the
/// trace is truncated at the last finite iterate and flagged.
RunResult run(const EnergyLandscape& land, const SolverParams& params, const Vector& x0, StepKind kind);

/// Least-squares fit of log(err) over the trailing `window`+1 records.
struct RateEstimate {
  double theta_hat = 1.0;
  int window = 0;
  double r_squared = 0.0;
};

/// Requires at least window+1 trailing records with finite positive err.
RateEstimate estimate_rate(const IterationTrace& trace, int window);

}  // namespace saddlescape
