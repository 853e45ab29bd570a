// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <set>
#include <sstream>

#include "saddlescape/cli/config.hpp"

namespace saddlescape {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& text, std::size_t byte, const std::string& what) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ConfigError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                    what);
}

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

double get_num(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number()) throw ConfigError("config: '" + where + "." + key + "' must be a number");
  return obj.at(key).get<double>();
}

SolverParams parse_params(const json& j) {
  require_keys(j, "params",
               {"beta", "gamma", "zeta", "dimer_l", "k", "eps", "eig_solver", "eig_inner_iters", "eig_tol",
                "max_iter", "stop_tol", "stop_metric", "bb_tau", "seed", "init_frame"});
  SolverParams p;
  if (j.contains("beta")) p.beta = get_num(j, "beta", "params");
  if (j.contains("gamma")) p.gamma = get_num(j, "gamma", "params");
  if (j.contains("zeta")) p.zeta = get_num(j, "zeta", "params");
  if (j.contains("dimer_l")) p.dimer_l = get_num(j, "dimer_l", "params");
  if (j.contains("k")) p.k = j.at("k").get<int>();
  if (j.contains("eps")) p.eps = get_num(j, "eps", "params");
  if (j.contains("eig_solver")) p.eig_solver = eig_solver_from_string(j.at("eig_solver").get<std::string>());
  if (j.contains("eig_inner_iters")) p.eig_inner_iters = j.at("eig_inner_iters").get<int>();
  if (j.contains("eig_tol")) p.eig_tol = get_num(j, "eig_tol", "params");
  if (j.contains("max_iter")) p.max_iter = j.at("max_iter").get<int>();
  if (j.contains("stop_tol")) p.stop_tol = get_num(j, "stop_tol", "params");
  if (j.contains("stop_metric")) p.stop_metric = stop_metric_from_string(j.at("stop_metric").get<std::string>());
  if (j.contains("bb_tau")) p.bb_tau = get_num(j, "bb_tau", "params");
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("init_frame")) p.init_frame = frame_init_from_string(j.at("init_frame").get<std::string>());
  p.validate();
  return p;
}

InitSpec parse_init(const json& j) {
  require_keys(j, "init", {"kind", "point", "rho"});
  InitSpec init;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "point") {
    init.kind = InitSpec::Kind::point;
    const auto& arr = j.at("point");
    if (!arr.is_array() || arr.empty()) throw ConfigError("config: init.point must be a nonempty array");
    init.point.resize(static_cast<int>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) init.point[static_cast<int>(i)] = arr[i].get<double>();
  } else if (kind == "saddle_sphere") {
    init.kind = InitSpec::Kind::saddle_sphere;
    init.rho = get_num(j, "rho", "init");
    if (!(init.rho > 0.0)) throw ConfigError("config: init.rho must be positive");
  } else if (kind == "saddle_layerwise_gaussian") {
    init.kind = InitSpec::Kind::saddle_layerwise_gaussian;
  } else {
    throw ConfigError("config: unknown init.kind '" + kind + "'");
  }
  return init;
}

const std::set<std::string>& landscape_override_keys(const std::string& name) {
  static const std::set<std::string> none{};
  static const std::set<std::string> rosen{"d"};
  static const std::set<std::string> cvx{"d", "k"};
  static const std::set<std::string> nn{"depth", "dims", "samples", "index_set", "data_seed"};
  static const std::set<std::string> quad{"eigvals"};
  if (name == "mb" || name == "mmb") return none;
  if (name == "rosenbrock_i" || name == "rosenbrock_ii") return rosen;
  if (name == "convex2") return cvx;
  if (name == "linear_nn") return nn;
  if (name == "quadratic") return quad;
  throw ConfigError("config: unknown landscape '" + name + "'");
}

}  // namespace

BuiltLandscape build_landscape(const std::string& name, const json& overrides) {
  require_keys(overrides, "landscape", [&] {
    auto keys = landscape_override_keys(name);
    keys.insert("name");
    return keys;
  }());
  if (name == "mb") return {mb_potential(), nullptr};
  if (name == "mmb") return {modified_mb(), nullptr};
  if (name == "rosenbrock_i" || name == "rosenbrock_ii") {
    RosenbrockModParams p;
    p.s_head = name == "rosenbrock_i" ? -500.0 : -50000.0;
    if (overrides.contains("d")) p.d = overrides.at("d").get<int>();
    return {rosenbrock_mod(p), nullptr};
  }
  if (name == "convex2") {
    Convex2Params p;
    if (overrides.contains("d")) p.d = overrides.at("d").get<int>();
    if (overrides.contains("k")) p.k = overrides.at("k").get<int>();
    return {convex2(p), nullptr};
  }
  if (name == "linear_nn") {
    LinearNetSpec spec;
    if (overrides.contains("depth")) spec.depth = overrides.at("depth").get<int>();
    if (overrides.contains("dims")) spec.dims = overrides.at("dims").get<std::vector<int>>();
    if (overrides.contains("samples")) spec.samples = overrides.at("samples").get<int>();
    if (overrides.contains("index_set")) spec.index_set = overrides.at("index_set").get<std::vector<int>>();
    if (overrides.contains("data_seed")) spec.seed = overrides.at("data_seed").get<std::uint64_t>();
    auto net = std::make_shared<LinearNetBuild>(linear_net_loss(spec));
    EnergyLandscape land = net->landscape;
    return {std::move(land), std::move(net)};
  }
  if (name == "quadratic") {
    if (!overrides.contains("eigvals")) throw ConfigError("config: quadratic landscape requires 'eigvals'");
    const auto vals = overrides.at("eigvals").get<std::vector<double>>();
    Vector ev(static_cast<int>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) ev[static_cast<int>(i)] = vals[i];
    return {quadratic_landscape(ev), nullptr};
  }
  throw ConfigError("config: unknown landscape '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(text, e.byte, e.what());
  }
  require_keys(doc, "config", {"landscape", "method", "params", "init", "sweep", "output"});

  ExperimentConfig cfg;
  const json& land = doc.at("landscape");
  if (!land.is_object() || !land.contains("name")) {
    throw ConfigError("config: landscape must be an object with a 'name'");
  }
  cfg.landscape_name = land.at("name").get<std::string>();
  cfg.landscape_overrides = land;
  cfg.landscape_overrides.erase("name");
  // validates landscape name and override keys
  require_keys(land, "landscape", [&] {
    auto keys = landscape_override_keys(cfg.landscape_name);
    keys.insert("name");
    return keys;
  }());

  cfg.method = step_kind_from_string(doc.at("method").get<std::string>());
  cfg.params = parse_params(doc.value("params", json::object()));
  cfg.init = parse_init(doc.at("init"));
  if (doc.contains("sweep")) {
    if (!doc.at("sweep").is_array()) throw ConfigError("config: sweep must be an array of momentum values");
    cfg.sweep = doc.at("sweep").get<std::vector<double>>();
  }
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    require_keys(out, "output", {"path", "format"});
    if (out.contains("path")) cfg.output.path = out.at("path").get<std::string>();
    if (out.contains("format")) {
      const std::string f = out.at("format").get<std::string>();
      if (f == "csv") {
        cfg.output.format = OutputSpec::Format::csv;
      } else if (f == "jsonl") {
        cfg.output.format = OutputSpec::Format::jsonl;
      } else {
        throw ConfigError("config: unknown output.format '" + f + "'");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json dump_config(const ExperimentConfig& config) {
  json doc;
  doc["landscape"] = config.landscape_overrides;
  doc["landscape"]["name"] = config.landscape_name;
  doc["method"] = to_string(config.method);
  json p;
  p["beta"] = config.params.beta;
  p["gamma"] = config.params.gamma;
  p["zeta"] = config.params.zeta;
  p["dimer_l"] = config.params.dimer_l;
  p["k"] = config.params.k;
  p["eps"] = config.params.eps;
  p["eig_solver"] = to_string(config.params.eig_solver);
  p["eig_inner_iters"] = config.params.eig_inner_iters;
  p["eig_tol"] = config.params.eig_tol;
  p["max_iter"] = config.params.max_iter;
  p["stop_tol"] = config.params.stop_tol;
  p["stop_metric"] = to_string(config.params.stop_metric);
  p["bb_tau"] = config.params.bb_tau;
  p["seed"] = config.params.seed;
  p["init_frame"] = to_string(config.params.init_frame);
  doc["params"] = p;
  json init;
  switch (config.init.kind) {
    case InitSpec::Kind::point: {
      init["kind"] = "point";
      std::vector<double> pt(config.init.point.data(), config.init.point.data() + config.init.point.size());
      init["point"] = pt;
      break;
    }
    case InitSpec::Kind::saddle_sphere:
      init["kind"] = "saddle_sphere";
      init["rho"] = config.init.rho;
      break;
    case InitSpec::Kind::saddle_layerwise_gaussian:
      init["kind"] = "saddle_layerwise_gaussian";
      break;
  }
  doc["init"] = init;
  if (config.sweep) doc["sweep"] = *config.sweep;
  doc["output"]["path"] = config.output.path;
  doc["output"]["format"] = config.output.format == OutputSpec::Format::csv ? "csv" : "jsonl";
  return doc;
}

Vector resolve_initial_point(const ExperimentConfig& config, const BuiltLandscape& built) {
  constexpr std::uint64_t kInitStream = 0xd1b54a32d192ed03ULL;
  switch (config.init.kind) {
    case InitSpec::Kind::point:
      if (config.init.point.size() != built.land.dim()) {
        throw ConfigError("config: init.point has dimension " + std::to_string(config.init.point.size()) +
                          " but the landscape has dimension " + std::to_string(built.land.dim()));
      }
      return config.init.point;
    case InitSpec::Kind::saddle_sphere: {
      if (!built.land.known_saddle()) throw ConfigError("config: saddle_sphere init needs a known saddle");
      Rng rng(config.params.seed ^ kInitStream);
      Vector n = rng.gaussian_vector(built.land.dim());
      const double nn = n.norm();
      if (nn == 0.0) throw Error("saddle_sphere: degenerate direction draw");
      return built.land.known_saddle()->x_star + config.init.rho * n / nn;
    }
    case InitSpec::Kind::saddle_layerwise_gaussian: {
      if (!built.net) throw ConfigError("config: saddle_layerwise_gaussian init requires the linear_nn landscape");
      Rng rng(config.params.seed ^ kInitStream);
      return layerwise_gaussian_point(*built.net, rng);
    }
  }
  throw ConfigError("config: unhandled init kind");
}

}  // namespace saddlescape
