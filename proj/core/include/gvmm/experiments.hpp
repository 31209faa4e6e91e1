#pragma once

#include <map>
#include <string>
#include <vector>

namespace gvmm {

const char* toolkit_version();

struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, double> parameters;
  std::map<std::string, std::string> strings;
  /// Overrides for the experiment's residual tolerances; must be positive.
  std::map<std::string, double> tolerances;
  /// Expected verdicts for existence-style checks, e.g. {"existence_R": "OBSTRUCTED"}.
  std::map<std::string, std::string> expect;
  std::vector<int> grid;
  unsigned seed = 7;
};

/// Parses a JSON document {experiment, parameters, tolerances, expect, grid, seed}.
/// Throws ConfigInvalid on unknown keys or malformed values.
ExperimentConfig parse_config(const std::string& text);

struct VerificationReport {
  std::string experiment;
  std::map<std::string, double> residuals;
  std::map<std::string, double> tolerances;
  /// PASS / FAIL per residual, and EXISTS / OBSTRUCTED for existence checks.
  std::map<std::string, std::string> verdicts;
  /// Verdicts whose value must match a declared expectation.
  std::map<std::string, std::string> expected;
  /// Informational numbers (computed values, counts).
  std::map<std::string, double> values;
  /// Tabular output, one map per row.
  std::vector<std::map<std::string, std::string>> table;
  std::map<std::string, std::string> config_echo;
  double wall_time = 0.0;

  /// Records r against tol; a non-finite residual fails.
  void check(const std::string& key, double r, double tol);
  bool passed() const;
};

/// Names in the default suite order.
std::vector<std::string> experiment_names();

/// Throws UnknownExperiment or ConfigInvalid.
VerificationReport run_experiment(const ExperimentConfig& config);

struct SuiteReport {
  std::vector<VerificationReport> children;
  double wall_time = 0.0;
  bool passed() const;
};

/// Runs the named experiments with default settings (`seed` shared); unknown names throw
/// before anything runs.
SuiteReport run_suite(const std::vector<std::string>& names, unsigned seed = 7, bool parallel = true);

/// Sorted keys, full double precision. Timing fields are left out when `timing` is false.
std::string to_json(const VerificationReport& r, bool timing = true);
std::string to_json(const SuiteReport& r, bool timing = true);

}  // namespace gvmm
