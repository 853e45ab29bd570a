// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "saddlescape/dyn/dynamics.hpp"
#include "saddlescape/landscapes/landscapes.hpp"

namespace saddlescape {

struct InitSpec {
  enum class Kind { point, saddle_sphere, saddle_layerwise_gaussian };
  Kind kind = Kind::point;
  Vector point;      // explicit starting point
  double rho = 1.0;  // sphere radius around the known saddle
};

struct OutputSpec {
  enum class Format { csv, jsonl };
  std::string path = "trace.csv";
  Format format = Format::csv;
};

/// One experiment: a landscape, a method, solver parameters, the initial
/// point rule and the output sink. `sweep` lists momentum values for the
/// sweep command.
struct ExperimentConfig {
  std::string landscape_name;
  nlohmann::json landscape_overrides = nlohmann::json::object();
  StepKind method = StepKind::ahisd;
  SolverParams params;
  InitSpec init;
  std::optional<std::vector<double>> sweep;
  OutputSpec output;
};

/// Parses and validates a config document. Unknown keys anywhere in the
/// document are rejected; JSON syntax errors surface as ConfigError with
/// line/column diagnostics.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Effective-config dump; parse_config(dump_config(c).dump()) is equivalent
/// to c.
nlohmann::json dump_config(const ExperimentConfig& config);

/// A landscape instantiated from a config, with the extra structure some
/// initializers need.
struct BuiltLandscape {
  EnergyLandscape land;
  std::shared_ptr<LinearNetBuild> net;  // present for linear_nn
};

/// Instantiates a registry landscape by name with JSON overrides. Names:
/// mb, mmb, rosenbrock_i, rosenbrock_ii, convex2, linear_nn, quadratic.
BuiltLandscape build_landscape(const std::string& name, const nlohmann::json& overrides);

/// Resolves the starting point of a run per the config's init rule.
Vector resolve_initial_point(const ExperimentConfig& config, const BuiltLandscape& built);

}  // namespace saddlescape
