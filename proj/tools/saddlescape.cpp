// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <iostream>

#include "saddlescape/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"saddlescape: high-index saddle point search experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path, dump_path, suite;
  int every = 1;
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress per-run summaries");

  auto* run_cmd = app.add_subcommand("run", "execute one experiment config and write its trace");
  run_cmd->add_option("config", config_path, "experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_path, "trace output path (overrides the config)");
  run_cmd->add_option("--every", every, "keep every N-th trace record plus the last")->check(CLI::PositiveNumber);
  run_cmd->add_option("--dump-config", dump_path, "write the effective config to this path");

  auto* sweep_cmd = app.add_subcommand("sweep", "run the config's momentum sweep and emit the table");
  sweep_cmd->add_option("config", config_path, "experiment config (JSON) with a 'sweep' list")->required();
  bool parallel = false;
  sweep_cmd->add_flag("--parallel", parallel, "run sweep rows concurrently (cpu_seconds loses timing fidelity)");

  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
  verify_cmd->add_option("suite", suite, "gradients | eigensolvers | dimer | stability | rates | all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? saddlescape::kExitUsage : saddlescape::kExitOk;
  }

  try {
    if (run_cmd->parsed()) {
      const auto config = saddlescape::load_config_file(config_path);
      saddlescape::RunCommandOptions opts;
      if (!out_path.empty()) opts.out_path = out_path;
      if (!dump_path.empty()) opts.dump_config_path = dump_path;
      opts.every = every;
      opts.quiet = quiet;
      return saddlescape::cmd_run(config, opts);
    }
    if (sweep_cmd->parsed()) {
      const auto config = saddlescape::load_config_file(config_path);
      return saddlescape::cmd_sweep(config, quiet, parallel);
    }
    return saddlescape::cmd_verify(suite, quiet);
  } catch (const saddlescape::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return saddlescape::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return saddlescape::kExitUsage;
  }
}
