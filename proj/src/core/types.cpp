// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include "saddlescape/core/types.hpp"

namespace saddlescape {

std::string to_string(EigSolverKind k) {
  switch (k) {
    case EigSolverKind::sirqit: return "sirqit";
    case EigSolverKind::lobpcg: return "lobpcg";
    case EigSolverKind::dense: return "dense";
  }
  return "?";
}

std::string to_string(StopMetric m) {
  switch (m) {
    case StopMetric::distance_to_known: return "distance_to_known";
    case StopMetric::grad_norm: return "grad_norm";
  }
  return "?";
}

std::string to_string(FrameInit f) {
  switch (f) {
    case FrameInit::random_warmup: return "random";
    case FrameInit::dense_oracle: return "dense";
  }
  return "?";
}

EigSolverKind eig_solver_from_string(const std::string& s) {
  if (s == "sirqit") return EigSolverKind::sirqit;
  if (s == "lobpcg") return EigSolverKind::lobpcg;
  if (s == "dense") return EigSolverKind::dense;
  throw ConfigError("unknown eig_solver '" + s + "' (expected sirqit, lobpcg or dense)");
}

StopMetric stop_metric_from_string(const std::string& s) {
  if (s == "distance_to_known") return StopMetric::distance_to_known;
  if (s == "grad_norm") return StopMetric::grad_norm;
  throw ConfigError("unknown stop_metric '" + s + "' (expected distance_to_known or grad_norm)");
}

FrameInit frame_init_from_string(const std::string& s) {
  if (s == "random") return FrameInit::random_warmup;
  if (s == "dense") return FrameInit::dense_oracle;
  throw ConfigError("unknown init_frame '" + s + "' (expected random or dense)");
}

void SolverParams::validate() const {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
  if (!(zeta >= 0.0)) throw ConfigError("zeta must be nonnegative (0 selects automatic)");
  if (!(dimer_l > 0.0)) throw ConfigError("dimer_l must be positive");
  if (k < 0) throw ConfigError("k must be nonnegative");
  if (eig_inner_iters <= 0) throw ConfigError("eig_inner_iters must be positive");
  if (!(eig_tol > 0.0)) throw ConfigError("eig_tol must be positive");
  if (max_iter <= 0) throw ConfigError("max_iter must be positive");
  if (!(stop_tol > 0.0)) throw ConfigError("stop_tol must be positive");
  if (!(bb_tau > 0.0)) throw ConfigError("bb_tau must be positive");
}

}  // namespace saddlescape
