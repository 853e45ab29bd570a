// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "saddlescape/cli/config.hpp"

namespace saddlescape {

/// Exit codes shared by all commands: 0 converged or suites passed, 1 usage
/// or property failure, 2 iteration budget exhausted, 3 divergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitDiverged = 3;

/// Writes a trace in the CSV schema iter,err,grad_norm,energy,wall_ns with
/// %.17g reals, UTF-8, LF line endings. every > 1 keeps each every-th record
/// plus the last.
void write_trace_csv(const IterationTrace& trace, const std::string& path, int every = 1);
void write_trace_jsonl(const IterationTrace& trace, const std::string& path, int every = 1);

struct RunCommandOptions {
  std::optional<std::string> out_path;          // overrides config output.path
  int every = 1;                                // trace downsampling for plotting
  std::optional<std::string> dump_config_path;  // effective-config dump
  bool quiet = false;
};

int cmd_run(const ExperimentConfig& config, const RunCommandOptions& opts);

struct SweepRow {
  double gamma = 0.0;
  int iters = 0;
  double cpu_seconds = 0.0;
  bool converged = false;
  double speedup_vs_gamma0 = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int exit_code = kExitOk;
};

/// Runs every momentum value in config.sweep with identical seed and initial
/// point; writes per-row traces plus the table as CSV and aligned text.
SweepResult run_sweep(const ExperimentConfig& config, bool parallel = false);
int cmd_sweep(const ExperimentConfig& config, bool quiet = false, bool parallel = false);

int cmd_verify(const std::string& suite, bool quiet = false);

}  // namespace saddlescape
