#include <gtest/gtest.h>

#include "mergepath/cli/config.hpp"
#include "mergepath/error.hpp"
#include "mergepath/shifted_solve.hpp"

using namespace mergepath;
using namespace mergepath::cli;

namespace {

ErrorCode code_of(const std::string& json) {
  try {
    parse_experiment_config(json);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << json;
  return ErrorCode::InvalidArgument;
}

const char* kMinimal = R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FEG", "alpha": 0.5}]})";

}  // namespace

TEST(Config, MinimalDefaults) {
  const ExperimentConfig c = parse_experiment_config(kMinimal);
  EXPECT_EQ(c.problem.dimension, 2);
  ASSERT_EQ(c.algorithms.size(), 1u);
  EXPECT_EQ(c.algorithms[0].label, "FEG");
  EXPECT_EQ(c.algorithms[0].config.max_iterations, 1000);
  EXPECT_EQ(c.start, random_point(0, 2));
}

TEST(Config, StepSizeForms) {
  const ExperimentConfig c = parse_experiment_config(R"({
    "problem": {"name": "random_scsc", "params": {"seed": 1, "d": 3, "L": 4.0, "mu": 0.5}},
    "algorithms": [{"name": "SM_EAG_PLUS", "alpha": "max"}, {"name": "FEG", "alpha_L": 0.5},
                   {"name": "OHM", "alpha": 0.3, "iterations": 7}],
    "iterations": 12})");
  EXPECT_DOUBLE_EQ(c.algorithms[0].config.alpha, sm_eag_max_step(4.0, 0.5));
  EXPECT_DOUBLE_EQ(c.algorithms[1].config.alpha, 0.125);
  EXPECT_EQ(c.algorithms[1].config.max_iterations, 12);
  EXPECT_EQ(c.algorithms[2].config.max_iterations, 7);
}

TEST(Config, Figure1StepDefaults) {
  const ExperimentConfig c = parse_experiment_config(R"({"problem": {"name": "figure1"},
    "algorithms": [{"name": "AGM", "momentum_a": 5}, {"name": "EAG"}]})");
  EXPECT_EQ(c.algorithms[0].config.alpha, 0.025);
  EXPECT_EQ(c.algorithms[1].config.alpha, 0.1);
  EXPECT_EQ(c.start, (Vec(2) << -2.0, 3.0).finished());
}

TEST(Config, CompositeProblem) {
  const ExperimentConfig c = parse_experiment_config(R"({
    "problem": {"name": "composite", "params": {
      "smooth": {"name": "bilinear", "params": {"A": [[1.0]]}},
      "f": {"type": "box", "lower": -1, "upper": 1}, "g": {"type": "l1", "weight": 0.5}}},
    "algorithms": [{"name": "OHM_DRS", "alpha": 0.5}], "start": [1, 1]})");
  EXPECT_TRUE(c.problem.composite());
  EXPECT_EQ(c.problem.n_x, 1);
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of("{not json"), ErrorCode::ParseError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FOO", "alpha": 1}]})"),
            ErrorCode::UnknownAlgorithm);
  EXPECT_EQ(code_of(R"({"problem": {"name": "nope"}, "algorithms": [{"name": "FEG", "alpha": 1}]})"),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": []})"), ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FEG"}]})"),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FEG", "alpha": 1}],
                        "start": [1, 2, 3]})"),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FEG", "alpha": 1}],
                        "outputs": [{"kind": "trace_csv", "path": "a.csv"}, {"kind": "bound_json", "path": "a.csv"}]})"),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FEG", "alpha": 1}],
                        "outputs": [{"kind": "plot", "path": "a.png"}]})"),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}},
                        "algorithms": [{"name": "FEG", "alpha": 1}, {"name": "FEG", "alpha": 0.5}]})"),
            ErrorCode::ConfigError);
  EXPECT_EQ(code_of(R"({"problem": {"name": "zero", "params": {"d": 2}}, "algorithms": [{"name": "FEG", "alpha": 1}],
                        "colour": "blue"})"),
            ErrorCode::ConfigError);
}

TEST(Config, StepRangeCheckedAgainstProblem) {
  EXPECT_EQ(code_of(R"({"problem": {"name": "bilinear", "params": {"A": [[2.0]]}},
                        "algorithms": [{"name": "FEG", "alpha": 0.5}]})"),
            ErrorCode::ConfigError);
}
