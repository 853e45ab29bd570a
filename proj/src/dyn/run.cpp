// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>

#include "saddlescape/core/reflect.hpp"
#include "saddlescape/core/rng.hpp"
#include "saddlescape/dyn/dynamics.hpp"

namespace saddlescape {

namespace {

SpectralFrame initial_frame(const EnergyLandscape& land, const Vector& x0, const SolverParams& params) {
  if (params.k == 0) return SpectralFrame::empty(land.dim());

  if (params.init_frame == FrameInit::dense_oracle) {
    EigenResult res = eigensol_dense(land.hessian(x0), params.k);
    SpectralFrame f;
    f.vectors = std::move(res.vectors);
    f.rayleigh = std::move(res.values);
    return f;
  }

  Rng rng(params.seed);
  SpectralFrame f;
  f.vectors = gram_schmidt(rng.gaussian_matrix(land.dim(), params.k));
  f.rayleigh = Vector::Zero(params.k);
  // warm-up sweeps at x0 before the first position step
  return refresh_frame(land, x0, f, params);
}

double error_to_target(const EnergyLandscape& land, const Vector& x) {
  if (!land.known_saddle()) return std::numeric_limits<double>::quiet_NaN();
  return (x - land.known_saddle()->x_star).norm();
}

}  // namespace

RunResult run(const EnergyLandscape& land, const SolverParams& params_in, const Vector& x0, StepKind kind) {
  params_in.validate();
  if (x0.size() != land.dim()) throw DimensionError("run: x0 dimension mismatch");
  if (!x0.allFinite()) throw Error("run: x0 must be finite");
  if (params_in.stop_metric == StopMetric::distance_to_known && !land.known_saddle()) {
    throw ConfigError("run: stop metric distance_to_known requires a landscape with a known saddle");
  }

  if (params_in.k > land.dim()) {
    throw ConfigError("run: k = " + std::to_string(params_in.k) + " exceeds the landscape dimension " +
                      std::to_string(land.dim()));
  }

  SolverParams params = params_in;
  if (params.zeta == 0.0 && params.eig_solver == EigSolverKind::sirqit && params.k > 0) {
    const HvOperator H0 = HvOperator::at_point(land, x0, params.dimer_l);
    const double est = estimate_operator_norm(H0, params.seed ^ 0x9e3779b97f4a7c15ULL);
    params.zeta = 1e-3 / std::max(est, 1e-30);
  }

  RunResult result;
  SolverState state;
  state.x = x0;
  state.x_prev = x0;
  state.iter = 0;
  state.frame = initial_frame(land, x0, params);

  // BB bookkeeping
  double bb_beta = params.beta;
  Vector grad_prev;
  Vector x_prev_bb;

  const auto t0 = std::chrono::steady_clock::now();
  result.reason = TerminationReason::max_iter;

  for (;;) {
    const Vector g = land.gradient(state.x);
    TraceRecord rec;
    rec.iter = state.iter;
    rec.err = error_to_target(land, state.x);
    rec.grad_norm = g.norm();
    rec.energy = land.energy(state.x);
    rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();

    // overflow in the trace quantities counts as divergence; the trace keeps
    // only finite records
    const bool err_bad = land.known_saddle() && !std::isfinite(rec.err);
    if (err_bad || !std::isfinite(rec.grad_norm) || !std::isfinite(rec.energy)) {
      result.reason = TerminationReason::diverged;
      result.trace.diverged = true;
      break;
    }
    result.trace.records.push_back(rec);

    const double metric = params.stop_metric == StopMetric::distance_to_known ? rec.err : rec.grad_norm;
    if (std::isfinite(metric) && metric <= params.stop_tol) {
      result.reason = TerminationReason::converged;
      result.trace.converged = true;
      break;
    }
    if (state.iter >= params.max_iter) {
      result.reason = TerminationReason::max_iter;
      break;
    }

    try {
      if (kind == StepKind::hisd) {
        state = hisd_step(land, state, params);
      } else if (kind == StepKind::ahisd) {
        state = ahisd_step(land, state, params);
      } else {
        SolverParams bb_params = params;
        bb_params.beta = bb_beta;
        const Vector x_before = state.x;
        state = hisd_step(land, state, bb_params);
        const Vector g_now = land.gradient(state.x);
        if (!g_now.allFinite()) {
          throw DivergenceError("gradient non-finite after BB step " + std::to_string(state.iter));
        }
        BbStep next = bb_step_size(g_now, g, state.x, x_before, params.bb_tau, bb_beta);
        if (next.used_fallback) ++result.bb_fallbacks;
        bb_beta = next.value;
      }
    } catch (const DivergenceError&) {
      result.reason = TerminationReason::diverged;
      result.trace.diverged = true;
      break;
    }
  }

  result.final_state = std::move(state);
  result.iterations = result.trace.records.empty() ? 0 : result.trace.records.back().iter;
  return result;
}

RateEstimate estimate_rate(const IterationTrace& trace, int window) {
  if (window < 1) throw Error("estimate_rate: window must be at least 1");
  const int need = window + 1;
  const int n = static_cast<int>(trace.records.size());
  if (n < need) {
    throw Error("estimate_rate: need at least " + std::to_string(need) + " records, have " + std::to_string(n));
  }
  const int start = n - need;
  for (int i = start; i < n; ++i) {
    const double e = trace.records[i].err;
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw Error("estimate_rate: trailing records must have finite positive err");
    }
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = start; i < n; ++i) {
    const double x = static_cast<double>(trace.records[i].iter);
    const double y = std::log(trace.records[i].err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double m = static_cast<double>(need);
  const double vx = sxx - sx * sx / m;
  const double vy = syy - sy * sy / m;
  const double cov = sxy - sx * sy / m;
  if (!(vx > 0.0)) throw Error("estimate_rate: degenerate iteration indices");

  RateEstimate est;
  est.window = window;
  const double slope = cov / vx;
  est.theta_hat = std::exp(slope);
  est.r_squared = vy > 0.0 ? (cov * cov) / (vx * vy) : 1.0;
  return est;
}

}  // namespace saddlescape
