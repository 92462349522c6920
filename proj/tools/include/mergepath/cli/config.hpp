#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergepath/algorithm.hpp"

namespace mergepath::cli {

struct OutputSpec {
  std::string kind;       // trace_csv, bound_json, mp_csv
  std::string path;
  std::string algorithm;  // label of the algorithm entry; empty selects the only one
  std::string rule;       // rate rule for bound_json in `run`
};

struct AlgorithmEntry {
  std::string label;
  AlgorithmConfig config;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<AlgorithmEntry> algorithms;
  Vec start;
  long iterations = 1000;
  std::vector<OutputSpec> outputs;
  std::uint64_t seed = 0;
  double mp_eps = 0.1;  // eps of the SM-EAG+/OC-Halpern merging report
};

// Throws ParseError (malformed JSON), UnknownAlgorithm, or ConfigError.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Problem from a {"name": ..., "params": {...}} object given as JSON text.
ProblemSpec parse_problem(const std::string& json_text, std::uint64_t default_seed = 0);

}  // namespace mergepath::cli
