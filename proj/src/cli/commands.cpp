// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "saddlescape/cli/commands.hpp"
#include "saddlescape/cli/verify_suites.hpp"

namespace saddlescape {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::size_t> kept_indices(std::size_t n, int every) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  const std::size_t step = every < 1 ? 1 : static_cast<std::size_t>(every);
  for (std::size_t i = 0; i < n; i += step) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings on every platform
  if (!out) throw Error("cannot open output file '" + path + "'");
  return out;
}

int reason_exit(TerminationReason r) {
  switch (r) {
    case TerminationReason::converged: return kExitOk;
    case TerminationReason::max_iter: return kExitBudget;
    case TerminationReason::diverged: return kExitDiverged;
  }
  return kExitUsage;
}

std::string stem_of(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

}  // namespace

void write_trace_csv(const IterationTrace& trace, const std::string& path, int every) {
  auto out = open_out(path);
  out << "iter,err,grad_norm,energy,wall_ns\n";
  for (const std::size_t i : kept_indices(trace.records.size(), every)) {
    const TraceRecord& r = trace.records[i];
    out << r.iter << ',' << g17(r.err) << ',' << g17(r.grad_norm) << ',' << g17(r.energy) << ',' << r.wall_ns << '\n';
  }
}

void write_trace_jsonl(const IterationTrace& trace, const std::string& path, int every) {
  auto out = open_out(path);
  for (const std::size_t i : kept_indices(trace.records.size(), every)) {
    const TraceRecord& r = trace.records[i];
    out << "{\"iter\":" << r.iter << ",\"err\":" << (std::isfinite(r.err) ? g17(r.err) : std::string("null"))
        << ",\"grad_norm\":" << g17(r.grad_norm) << ",\"energy\":" << g17(r.energy) << ",\"wall_ns\":" << r.wall_ns
        << "}\n";
  }
}

int cmd_run(const ExperimentConfig& config, const RunCommandOptions& opts) {
  const BuiltLandscape built = build_landscape(config.landscape_name, config.landscape_overrides);
  const Vector x0 = resolve_initial_point(config, built);

  if (opts.dump_config_path) {
    auto out = open_out(*opts.dump_config_path);
    out << dump_config(config).dump(2) << '\n';
  }

  const RunResult result = run(built.land, config.params, x0, config.method);

  const std::string path = opts.out_path.value_or(config.output.path);
  if (config.output.format == OutputSpec::Format::csv) {
    write_trace_csv(result.trace, path, opts.every);
  } else {
    write_trace_jsonl(result.trace, path, opts.every);
  }

  if (!opts.quiet) {
    std::cout << config.landscape_name << " " << to_string(config.method) << ": ";
    switch (result.reason) {
      case TerminationReason::converged: std::cout << "converged in " << result.iterations << " iterations"; break;
      case TerminationReason::max_iter: std::cout << "iteration budget reached at " << result.iterations; break;
      case TerminationReason::diverged: std::cout << "diverged at iteration " << result.iterations; break;
    }
    if (!result.trace.records.empty()) {
      const TraceRecord& last = result.trace.records.back();
      std::cout << " (err " << g17(last.err) << ", grad " << g17(last.grad_norm) << ", " << path << ")";
    }
    std::cout << '\n';
  }
  return reason_exit(result.reason);
}

SweepResult run_sweep(const ExperimentConfig& config, bool parallel) {
  if (!config.sweep || config.sweep->empty()) {
    throw ConfigError("sweep: config needs a nonempty 'sweep' list of momentum values");
  }
  bool has_zero = false;
  for (double g : *config.sweep) {
    if (g == 0.0) has_zero = true;
  }
  if (!has_zero) throw ConfigError("sweep: the list must contain 0 as the baseline");

  const BuiltLandscape built = build_landscape(config.landscape_name, config.landscape_overrides);
  const Vector x0 = resolve_initial_point(config, built);
  const std::string stem = stem_of(config.output.path);

  const std::size_t n = config.sweep->size();
  std::vector<RunResult> results(n);
  const auto row_job = [&](std::size_t i) {
    SolverParams p = config.params;
    p.gamma = (*config.sweep)[i];
    results[i] = run(built.land, p, x0, config.method);
  };
  if (parallel) {
    // rows share only the immutable landscape; default stays sequential so
    // the cpu_seconds column reflects undisturbed single-run timing
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(row_job, i);
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < n; ++i) row_job(i);
  }

  SweepResult sres;
  double cpu0 = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i) {
    const RunResult& r = results[i];
    SweepRow row;
    row.gamma = (*config.sweep)[i];
    row.iters = r.iterations;
    row.cpu_seconds = r.trace.records.empty() ? 0.0 : static_cast<double>(r.trace.records.back().wall_ns) * 1e-9;
    row.converged = r.reason == TerminationReason::converged;
    if (row.gamma == 0.0 && row.converged) cpu0 = row.cpu_seconds;
    sres.rows.push_back(row);
    sres.exit_code = std::max(sres.exit_code, reason_exit(r.reason));

    char suffix[48];
    std::snprintf(suffix, sizeof(suffix), "_gamma%g.csv", row.gamma);
    write_trace_csv(r.trace, stem + suffix);
  }
  for (SweepRow& row : sres.rows) {
    if (row.converged && std::isfinite(cpu0) && row.cpu_seconds > 0.0) {
      row.speedup_vs_gamma0 = cpu0 / row.cpu_seconds;
    }
  }
  return sres;
}

int cmd_sweep(const ExperimentConfig& config, bool quiet, bool parallel) {
  const SweepResult sres = run_sweep(config, parallel);
  const std::string stem = stem_of(config.output.path);

  {
    auto out = open_out(stem + "_sweep.csv");
    out << "gamma,iters,cpu_seconds,converged,speedup_vs_gamma0\n";
    for (const SweepRow& r : sres.rows) {
      out << g17(r.gamma) << ',' << r.iters << ',' << g17(r.cpu_seconds) << ',' << (r.converged ? 1 : 0) << ','
          << g17(r.speedup_vs_gamma0) << '\n';
    }
  }
  {
    std::string table;
    char line[160];
    std::snprintf(line, sizeof(line), "%8s %10s %12s %10s %10s\n", "gamma", "iters", "cpu_s", "converged", "speedup");
    table += line;
    for (const SweepRow& r : sres.rows) {
      std::snprintf(line, sizeof(line), "%8.3g %10d %12.4f %10s %10.2f\n", r.gamma, r.iters, r.cpu_seconds,
                    r.converged ? "yes" : "NO", r.speedup_vs_gamma0);
      table += line;
    }
    open_out(stem + "_sweep.txt") << table;
    if (!quiet) std::cout << table;
  }
  return sres.exit_code;
}

int cmd_verify(const std::string& suite, bool quiet) {
  const auto results = verify_suite(suite);
  bool all = true;
  for (const PropertyResult& r : results) {
    all = all && r.pass;
    if (!quiet || !r.pass) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
  }
  std::cout << (all ? "OK" : "FAILED") << " " << results.size() << " properties\n";
  return all ? kExitOk : kExitUsage;
}

}  // namespace saddlescape
