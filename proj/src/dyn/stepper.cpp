// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "saddlescape/core/reflect.hpp"
#include "saddlescape/dyn/dynamics.hpp"

namespace saddlescape {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::hisd: return "hisd";
    case StepKind::ahisd: return "ahisd";
    case StepKind::hisd_bb: return "hisd_bb";
  }
  return "?";
}

StepKind step_kind_from_string(const std::string& s) {
  if (s == "hisd") return StepKind::hisd;
  if (s == "ahisd") return StepKind::ahisd;
  if (s == "hisd_bb") return StepKind::hisd_bb;
  throw ConfigError("unknown method '" + s + "' (expected hisd, ahisd or hisd_bb)");
}

ParamChoice select_parameters(double mu, double L, double eps) {
  if (!(mu > 0.0) || !(L >= mu)) throw Error("select_parameters: need 0 < mu <= L");
  const double kappa = L / mu;
  const double limit = 1.0 / (std::sqrt(kappa) + 1.0);
  if (!(eps > 0.0 && eps < limit)) {
    throw Error("select_parameters: eps must lie in (0, 1/(sqrt(kappa)+1)) = (0, " + std::to_string(limit) + ")");
  }
  ParamChoice p;
  p.mu = mu;
  p.L = L;
  p.kappa = kappa;
  p.eps = eps;
  const double sb = 2.0 / (std::sqrt(L) + std::sqrt(mu));
  p.beta = sb * sb;
  const double sg = 1.0 - 2.0 / (std::sqrt(kappa) + 1.0) + eps;
  p.gamma = sg * sg;
  return p;
}

SpectralFrame refresh_frame(const EnergyLandscape& land, const Vector& x, const SpectralFrame& warm,
                            const SolverParams& params) {
  if (params.k == 0) return SpectralFrame::empty(land.dim());

  EigenResult res;
  if (params.eig_solver == EigSolverKind::dense) {
    res = eigensol_dense(land.hessian(x), params.k);
  } else {
    const HvOperator H = HvOperator::at_point(land, x, params.dimer_l);
    if (params.eig_solver == EigSolverKind::sirqit) {
      SirqitOpts opts;
      opts.sweeps = params.eig_inner_iters;
      opts.zeta = params.zeta;
      if (!(opts.zeta > 0.0)) {
        const double est = estimate_operator_norm(H, params.seed ^ 0x9e3779b97f4a7c15ULL);
        opts.zeta = 1e-3 / std::max(est, 1e-30);
      }
      res = eigensol_sirqit(H, warm.vectors, opts);
    } else {
      LobpcgOpts opts;
      opts.inner_iters = params.eig_inner_iters;
      opts.tol = params.eig_tol;
      res = eigensol_lobpcg(H, warm.vectors, opts);
    }
  }
  SpectralFrame f;
  f.vectors = std::move(res.vectors);
  f.rayleigh = std::move(res.values);
  return f;
}

namespace {

SolverState step_common(const EnergyLandscape& land, const SolverState& state, const SolverParams& params,
                        double beta, double gamma) {
  const Vector g = land.gradient(state.x);
  Vector x_next = state.x - beta * reflect(g, state.frame.vectors);
  if (gamma != 0.0) x_next += gamma * (state.x - state.x_prev);
  if (!x_next.allFinite()) {
    throw DivergenceError("position update produced non-finite values at iteration " + std::to_string(state.iter));
  }
  SolverState next;
  next.frame = refresh_frame(land, x_next, state.frame, params);
  next.x = std::move(x_next);
  next.x_prev = state.x;
  next.iter = state.iter + 1;
  return next;
}

}  // namespace

SolverState hisd_step(const EnergyLandscape& land, const SolverState& state, const SolverParams& params) {
  return step_common(land, state, params, params.beta, 0.0);
}

SolverState ahisd_step(const EnergyLandscape& land, const SolverState& state, const SolverParams& params) {
  return step_common(land, state, params, params.beta, params.gamma);
}

BbStep bb_step_size(const Vector& grad_now, const Vector& grad_prev, const Vector& x_now, const Vector& x_prev,
                    double tau, double fallback_beta) {
  if (grad_now.size() != grad_prev.size() || x_now.size() != x_prev.size() || grad_now.size() != x_now.size()) {
    throw DimensionError("bb_step_size: argument dimensions disagree");
  }
  const Vector dg = grad_now - grad_prev;
  const double dg2 = dg.squaredNorm();
  const double gn = grad_now.norm();

  if (!(dg2 > 0.0) || !(gn > 0.0)) return {fallback_beta, true};

  const double curv = (x_now - x_prev).dot(dg) / dg2;
  return {std::min(tau / gn, curv), false};
}

}  // namespace saddlescape
