#include "mergepath/cli/config.hpp"

#include <set>

#include <json.hpp>

#include "mergepath/error.hpp"
#include "mergepath/serialization.hpp"
#include "mergepath/shifted_solve.hpp"

namespace mergepath::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

void allow_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) bad("unknown key '" + k + "' in " + where);
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<long>();
}

std::string text(const json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

Vec vector(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of numbers");
  Vec v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = number(j[i], what);
  return v;
}

// A number broadcasts to the given size.
Vec vector_or_scalar(const json& j, Index size, const std::string& what) {
  if (j.is_number()) return Vec::Constant(size, j.get<double>());
  Vec v = vector(j, what);
  if (v.size() != size) bad(what + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(size));
  return v;
}

Mat matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad(what + " must be a nonempty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  Mat M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) bad(what + " rows must have equal length");
    for (Index c = 0; c < cols; ++c) M(i, c) = number(row[static_cast<std::size_t>(c)], what);
  }
  return M;
}

ProxSpec prox_spec(const json& j, Index size, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) bad(where + " needs a \"type\"");
  const std::string type = text(j["type"], where + ".type");
  if (type == "zero") {
    allow_keys(j, {"type"}, where);
    return ProxZero{};
  }
  if (type == "box") {
    allow_keys(j, {"type", "lower", "upper"}, where);
    if (!j.contains("lower") || !j.contains("upper")) bad(where + " box needs lower and upper");
    return ProxBox{vector_or_scalar(j["lower"], size, where + ".lower"),
                   vector_or_scalar(j["upper"], size, where + ".upper")};
  }
  if (type == "ball") {
    allow_keys(j, {"type", "center", "radius"}, where);
    ProxBall b;
    b.center = j.contains("center") ? vector_or_scalar(j["center"], size, where + ".center") : Vec::Zero(size);
    b.radius = j.contains("radius") ? number(j["radius"], where + ".radius") : 1.0;
    return b;
  }
  if (type == "l1") {
    allow_keys(j, {"type", "weight"}, where);
    return ProxL1{j.contains("weight") ? number(j["weight"], where + ".weight") : 1.0};
  }
  if (type == "quadratic") {
    allow_keys(j, {"type", "Q", "c"}, where);
    if (!j.contains("Q")) bad(where + " quadratic needs Q");
    ProxQuadratic q;
    q.Q = matrix(j["Q"], where + ".Q");
    q.c = j.contains("c") ? vector_or_scalar(j["c"], q.Q.rows(), where + ".c") : Vec::Zero(q.Q.rows());
    return q;
  }
  bad("unknown prox type '" + type + "' in " + where);
}

std::uint64_t seed_of(const json& params, std::uint64_t fallback) {
  if (!params.contains("seed")) return fallback;
  const long s = integer(params["seed"], "problem.params.seed");
  if (s < 0) bad("problem.params.seed must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

ProblemSpec problem_from(const json& j, std::uint64_t default_seed) {
  if (!j.is_object() || !j.contains("name")) bad("problem needs a \"name\"");
  allow_keys(j, {"name", "params"}, "problem");
  const std::string name = text(j["name"], "problem.name");
  const json params = j.value("params", json::object());
  if (!params.is_object()) bad("problem.params must be an object");
  auto get = [&](const char* key) -> const json& {
    if (!params.contains(key)) bad("problem '" + name + "' needs params." + key);
    return params[key];
  };
  if (name == "zero") {
    allow_keys(params, {"d"}, "problem.params");
    return make_zero(integer(get("d"), "d"));
  }
  if (name == "affine") {
    allow_keys(params, {"M", "b"}, "problem.params");
    const Mat M = matrix(get("M"), "M");
    return make_affine(M, params.contains("b") ? vector(params["b"], "b") : Vec::Zero(M.rows()));
  }
  if (name == "bilinear") {
    allow_keys(params, {"A", "b", "c"}, "problem.params");
    const Mat A = matrix(get("A"), "A");
    return make_bilinear(A, params.contains("b") ? vector(params["b"], "b") : Vec::Zero(A.rows()),
                         params.contains("c") ? vector(params["c"], "c") : Vec::Zero(A.cols()));
  }
  if (name == "random_scsc") {
    allow_keys(params, {"seed", "d", "L", "mu"}, "problem.params");
    return make_random_scsc(seed_of(params, default_seed), integer(get("d"), "d"), number(get("L"), "L"),
                            number(get("mu"), "mu"));
  }
  if (name == "random_monotone_affine") {
    allow_keys(params, {"seed", "d", "L", "mu", "rank"}, "problem.params");
    std::optional<Index> rank;
    if (params.contains("rank")) rank = integer(params["rank"], "rank");
    return make_random_monotone_affine(seed_of(params, default_seed), integer(get("d"), "d"), number(get("L"), "L"),
                                       params.contains("mu") ? number(params["mu"], "mu") : 0.0, std::nullopt, rank);
  }
  if (name == "figure1") {
    allow_keys(params, {}, "problem.params");
    return make_figure1();
  }
  if (name == "composite") {
    allow_keys(params, {"smooth", "f", "g", "n_x"}, "problem.params");
    const ProblemSpec smooth = problem_from(get("smooth"), default_seed);
    const Index n = params.contains("n_x") ? integer(params["n_x"], "n_x") : smooth.n_x;
    const ProxSpec f = params.contains("f") ? prox_spec(params["f"], n, "f") : ProxSpec{ProxZero{}};
    const ProxSpec gg = params.contains("g") ? prox_spec(params["g"], smooth.dimension - n, "g") : ProxSpec{ProxZero{}};
    return make_composite(f, gg, smooth, n);
  }
  bad("unknown problem '" + name + "'");
}

double default_alpha(const ProblemSpec& p, Algorithm a) {
  const std::string name(algorithm_name(a));
  if (auto it = p.step_defaults.find(name); it != p.step_defaults.end()) return it->second;
  const bool agm = a == Algorithm::AGM;
  if (auto it = p.step_defaults.find(agm ? "AGM" : "anchored"); it != p.step_defaults.end()) return it->second;
  bad(name + " needs \"alpha\" or \"alpha_L\"");
}

AlgorithmEntry algorithm_from(const json& j, const ProblemSpec& p, long iterations) {
  allow_keys(j,
             {"name", "label", "alpha", "alpha_L", "iterations", "momentum_a", "theta", "gamma", "resolvent_tolerance",
              "inner_budget", "stop_tolerance", "ohm_form"},
             "algorithm entry");
  if (!j.contains("name")) bad("algorithm entry needs a \"name\"");
  AlgorithmEntry e;
  const std::string name = text(j["name"], "algorithm name");
  AlgorithmConfig& c = e.config;
  c.algorithm = parse_algorithm(name);
  e.label = j.contains("label") ? text(j["label"], "label") : name;
  if (j.contains("alpha") && j.contains("alpha_L")) bad(name + ": give either alpha or alpha_L");
  if (j.contains("alpha")) {
    if (j["alpha"].is_string()) {
      if (j["alpha"] != "max") bad(name + ": alpha must be a number or \"max\"");
      if (c.algorithm != Algorithm::SM_EAG_PLUS) bad("alpha \"max\" applies to SM_EAG_PLUS only");
      c.alpha = sm_eag_max_step(p.L, p.mu);
    } else {
      c.alpha = number(j["alpha"], name + ".alpha");
    }
  } else if (j.contains("alpha_L")) {
    if (!(p.L > 0.0)) bad(name + ": alpha_L needs a problem with L > 0");
    c.alpha = number(j["alpha_L"], name + ".alpha_L") / p.L;
  } else {
    c.alpha = default_alpha(p, c.algorithm);
  }
  c.max_iterations = j.contains("iterations") ? integer(j["iterations"], "iterations") : iterations;
  if (j.contains("momentum_a")) c.momentum_a = number(j["momentum_a"], "momentum_a");
  if (j.contains("theta")) c.theta = number(j["theta"], "theta");
  if (j.contains("gamma")) c.gamma = number(j["gamma"], "gamma");
  if (j.contains("resolvent_tolerance")) c.resolvent_tolerance = number(j["resolvent_tolerance"], "resolvent_tolerance");
  if (j.contains("inner_budget")) c.inner_budget = integer(j["inner_budget"], "inner_budget");
  if (j.contains("stop_tolerance")) c.stop_tolerance = number(j["stop_tolerance"], "stop_tolerance");
  if (j.contains("ohm_form")) {
    const std::string form = text(j["ohm_form"], "ohm_form");
    if (form == "anchor") {
      c.ohm_form = OhmForm::Anchor;
    } else if (form == "shifted") {
      c.ohm_form = OhmForm::Shifted;
    } else {
      bad("ohm_form must be \"anchor\" or \"shifted\"");
    }
  }
  validate_config(c, p);
  return e;
}

}  // namespace

ProblemSpec parse_problem(const std::string& json_text, std::uint64_t default_seed) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return problem_from(j, default_seed);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  allow_keys(j, {"problem", "algorithms", "start", "iterations", "outputs", "seed", "mp_eps"}, "config");
  ExperimentConfig cfg;
  if (j.contains("seed")) {
    const long s = integer(j["seed"], "seed");
    if (s < 0) bad("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (!j.contains("problem")) bad("config needs a \"problem\"");
  cfg.problem = problem_from(j["problem"], cfg.seed);
  if (j.contains("iterations")) cfg.iterations = integer(j["iterations"], "iterations");
  if (cfg.iterations < 0) bad("iterations must be nonnegative");
  if (j.contains("mp_eps")) cfg.mp_eps = number(j["mp_eps"], "mp_eps");

  if (j.contains("start")) {
    cfg.start = vector(j["start"], "start");
  } else if (cfg.problem.default_start) {
    cfg.start = *cfg.problem.default_start;
  } else {
    cfg.start = random_point(cfg.seed, cfg.problem.dimension);
  }
  if (cfg.start.size() != cfg.problem.dimension) bad("start has the wrong dimension");

  if (!j.contains("algorithms") || !j["algorithms"].is_array() || j["algorithms"].empty()) {
    bad("config needs a nonempty \"algorithms\" array");
  }
  std::set<std::string> labels;
  for (const json& a : j["algorithms"]) {
    AlgorithmEntry e = algorithm_from(a, cfg.problem, cfg.iterations);
    if (!labels.insert(e.label).second) bad("duplicate algorithm label '" + e.label + "'");
    cfg.algorithms.push_back(std::move(e));
  }

  std::set<std::string> paths;
  for (const json& o : j.value("outputs", json::array())) {
    allow_keys(o, {"kind", "path", "algorithm", "rule"}, "output entry");
    OutputSpec out;
    out.kind = text(o.value("kind", json()), "output kind");
    out.path = text(o.value("path", json()), "output path");
    if (o.contains("algorithm")) out.algorithm = text(o["algorithm"], "output algorithm");
    if (o.contains("rule")) out.rule = text(o["rule"], "output rule");
    if (out.kind != "trace_csv" && out.kind != "bound_json" && out.kind != "mp_csv") {
      bad("unknown output kind '" + out.kind + "'");
    }
    if (!out.algorithm.empty() && !labels.count(out.algorithm)) bad("output refers to unknown algorithm '" + out.algorithm + "'");
    if (!paths.insert(out.path).second) bad("output path '" + out.path + "' is used twice");
    cfg.outputs.push_back(std::move(out));
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) { return parse_experiment_config(read_text_file(path)); }

}  // namespace mergepath::cli
