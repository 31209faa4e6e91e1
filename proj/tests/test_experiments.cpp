#include <gtest/gtest.h>

#include "gvmm/errors.hpp"
#include "gvmm/experiments.hpp"

using namespace gvmm;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ConstraintViolation;
}

}  // namespace

TEST(Config, ParsesAllFields) {
  const auto c = parse_config(R"({"experiment": "helicity-abc", "parameters": {"N": 32, "A": 2},
                                 "tolerances": {"relative_error": 1e-5}, "grid": [32], "seed": 3})");
  EXPECT_EQ(c.experiment, "helicity-abc");
  EXPECT_EQ(c.parameters.at("A"), 2.0);
  EXPECT_EQ(c.tolerances.at("relative_error"), 1e-5);
  EXPECT_EQ(c.grid, std::vector<int>{32});
  EXPECT_EQ(c.seed, 3u);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(code_of([] { parse_config(R"({"experiment": "x", "colour": 1})"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("{not json"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config(R"({"grid": "big"})"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config(R"([1, 2])"); }), ErrorCode::ConfigInvalid);
}

TEST(Config, RunValidatesAgainstTheExperiment) {
  ExperimentConfig c;
  c.experiment = "orbit-table";
  c.parameters["bogus"] = 1.0;
  EXPECT_EQ(code_of([&] { run_experiment(c); }), ErrorCode::ConfigInvalid);
  c.parameters.clear();
  c.tolerances["conjugation"] = -1.0;
  EXPECT_EQ(code_of([&] { run_experiment(c); }), ErrorCode::ConfigInvalid);
  c.tolerances.clear();
  c.expect["no_such_verdict"] = "EXISTS";
  EXPECT_EQ(code_of([&] { run_experiment(c); }), ErrorCode::ConfigInvalid);
  c.expect.clear();
  c.experiment = "nope";
  EXPECT_EQ(code_of([&] { run_experiment(c); }), ErrorCode::UnknownExperiment);
}

TEST(Experiments, PeriodT4Report) {
  ExperimentConfig c;
  c.experiment = "period-t4";
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.verdicts.at("existence_R"), "OBSTRUCTED");
  EXPECT_EQ(r.verdicts.at("existence_R_mod_Z"), "OBSTRUCTED");
  EXPECT_NEAR(r.values.at("per_gamma4"), 1.4142135623730951, 1e-8);
}

TEST(Experiments, WrongExpectationFails) {
  ExperimentConfig c;
  c.experiment = "period-t4";
  c.expect["existence_R"] = "EXISTS";
  EXPECT_FALSE(run_experiment(c).passed());
}

TEST(Experiments, TightToleranceFails) {
  ExperimentConfig c;
  c.experiment = "helicity-abc";
  c.parameters["N"] = 16;
  c.tolerances["relative_error"] = 1e-300;
  c.tolerances["quadratic"] = 1e-300;
  const auto r = run_experiment(c);
  EXPECT_FALSE(r.passed());
}

TEST(Experiments, DeterministicReports) {
  ExperimentConfig c;
  c.experiment = "orbit-table";
  c.seed = 19;
  EXPECT_EQ(to_json(run_experiment(c), false), to_json(run_experiment(c), false));
}

TEST(Experiments, OrbitTableMatches) {
  ExperimentConfig c;
  c.experiment = "orbit-table";
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.values.at("mismatches"), 0.0);
  EXPECT_EQ(r.table.size(), 3u);
}

TEST(Suite, EmptyPasses) {
  const auto s = run_suite({});
  EXPECT_TRUE(s.passed());
  EXPECT_TRUE(s.children.empty());
}

TEST(Suite, UnknownNameThrowsBeforeRunning) {
  EXPECT_EQ(code_of([] { run_suite({"orbit-table", "missing"}); }), ErrorCode::UnknownExperiment);
}

TEST(Suite, ParallelMatchesSequential) {
  const std::vector<std::string> names = {"orbit-table", "quantomorphism", "period-torus"};
  EXPECT_EQ(to_json(run_suite(names, 7, true), false), to_json(run_suite(names, 7, false), false));
}

TEST(Suite, EveryNamedExperimentIsRegistered) {
  for (const auto& n : experiment_names()) {
    ExperimentConfig c;
    c.experiment = n;
    c.parameters["definitely_not_a_parameter"] = 1.0;
    // ConfigInvalid (not UnknownExperiment) proves the name resolves.
    EXPECT_EQ(code_of([&] { run_experiment(c); }), ErrorCode::ConfigInvalid) << n;
  }
}
