#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gvmm/errors.hpp"
#include "gvmm/experiments.hpp"
#include "gvmm/fluid.hpp"
#include "gvmm/grid_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

std::pair<std::string, double> key_value(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw gvmm::Error(gvmm::ErrorCode::ConfigInvalid, "expected key=value, got '" + s + "'");
  std::size_t used = 0;
  double v = 0.0;
  const std::string rhs = s.substr(eq + 1);
  try {
    v = std::stod(rhs, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != rhs.size()) throw gvmm::Error(gvmm::ErrorCode::ConfigInvalid, "not a number in '" + s + "'");
  return {s.substr(0, eq), v};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gvmm::Error(gvmm::ErrorCode::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& body, const std::string& output) {
  std::cout << body << '\n';
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw gvmm::Error(gvmm::ErrorCode::IoError, "cannot write " + output);
    out << body << '\n';
  }
}

gvmm::FormField dump_field(const std::string& field, int n) {
  const gvmm::Grid g = gvmm::Grid::cube(3, n, 2.0 * std::acos(-1.0));
  if (field == "abc") return gvmm::flat(gvmm::abc_flow(g, 1.0, 1.0, 1.0));
  if (field == "hopf") return gvmm::hopf_sample(g, 2.5).theta;
  throw gvmm::Error(gvmm::ErrorCode::ConfigInvalid, "unknown field '" + field + "'");
}

}  // namespace

int main(int argc, char** argv) {
  auto log = spdlog::stderr_color_mt("gvmm");
  spdlog::set_default_logger(log);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Group-valued momentum map experiments"};
  app.set_version_flag("--version", gvmm::toolkit_version());

  std::string experiment, config_path, output;
  std::vector<std::string> tol_overrides, param_overrides, suite;
  std::vector<int> grid;
  unsigned seed = 7;
  bool all = false, list = false, no_timing = false, sequential = false, verbose = false;

  app.add_option("-e,--experiment", experiment, "Experiment name");
  app.add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("-o,--output", output, "Also write the report to this file");
  app.add_option("-t,--tol", tol_overrides, "Tolerance override key=value")->take_all();
  app.add_option("-p,--param", param_overrides, "Parameter override key=value")->take_all();
  auto* seed_opt = app.add_option("-s,--seed", seed, "Random seed");
  app.add_option("-g,--grid", grid, "Grid sizes")->take_all();
  auto* suite_opt = app.add_option("--suite", suite, "Run these experiments as a suite")->expected(0, -1);
  app.add_flag("--all", all, "Run the full default suite");
  app.add_flag("--list", list, "List experiment names");
  app.add_flag("--no-timing", no_timing, "Leave wall times out of the report");
  app.add_flag("--sequential", sequential, "Run suite members one at a time");
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  auto* dump = app.add_subcommand("dump", "Write a sample field to CSV, binary or a CSV slice");
  std::string field = "abc", format = "csv", dump_out;
  int dump_n = 32, component = 0, plane_at = 0;
  dump->add_option("--field", field, "abc or hopf");
  dump->add_option("--N", dump_n, "Grid size per axis")->check(CLI::Range(4, 512));
  dump->add_option("--format", format, "csv, bin or slice")->check(CLI::IsMember({"csv", "bin", "slice"}));
  dump->add_option("--component", component, "Component for slices");
  dump->add_option("--at", plane_at, "Index of the z-plane for slices");
  dump->add_option("-o,--output", dump_out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    if (*dump) {
      const gvmm::FormField f = dump_field(field, dump_n);
      if (format == "slice") {
        std::ofstream out(dump_out);
        if (!out) throw gvmm::Error(gvmm::ErrorCode::IoError, "cannot write " + dump_out);
        gvmm::write_slice_csv(out, f, static_cast<std::size_t>(component), 0, 1, {0, 0, plane_at});
      } else {
        gvmm::save_form(format == "bin" && !dump_out.ends_with(".bin") ? dump_out + ".bin" : dump_out, f);
      }
      spdlog::info("wrote {}", dump_out);
      return kExitPass;
    }
    if (list) {
      for (const auto& n : gvmm::experiment_names()) std::cout << n << '\n';
      return kExitPass;
    }
    if (all || suite_opt->count() > 0) {
      auto names = all ? gvmm::experiment_names() : suite;
      // a bare --suite comes through as one empty string
      std::erase(names, std::string{});
      spdlog::debug("suite of {} experiments", names.size());
      const auto report = gvmm::run_suite(names, seed, !sequential);
      for (const auto& c : report.children)
        spdlog::debug("{}: {} ({:.3f} s)", c.experiment, c.passed() ? "PASS" : "FAIL", c.wall_time);
      emit(gvmm::to_json(report, !no_timing), output);
      return report.passed() ? kExitPass : kExitFail;
    }

    gvmm::ExperimentConfig config;
    if (!config_path.empty()) config = gvmm::parse_config(read_file(config_path));
    if (!experiment.empty()) config.experiment = experiment;
    if (config.experiment.empty())
      throw gvmm::Error(gvmm::ErrorCode::ConfigInvalid, "no experiment given (use -e, --config, --suite or --all)");
    for (const auto& s : tol_overrides) {
      const auto [k, v] = key_value(s);
      config.tolerances[k] = v;
    }
    for (const auto& s : param_overrides) {
      const auto [k, v] = key_value(s);
      config.parameters[k] = v;
    }
    if (!grid.empty()) config.grid = grid;
    if (seed_opt->count() > 0) config.seed = seed;

    spdlog::debug("running {}", config.experiment);
    const auto report = gvmm::run_experiment(config);
    emit(gvmm::to_json(report, !no_timing), output);
    for (const auto& [k, v] : report.verdicts) {
      const auto e = report.expected.find(k);
      if (e != report.expected.end() ? v != e->second : v == "FAIL")
        spdlog::warn("{}: {} ({})", k, v, report.residuals.count(k) ? fmt::format("{:.3e}", report.residuals.at(k)) : "verdict");
    }
    return report.passed() ? kExitPass : kExitFail;
  } catch (const gvmm::Error& e) {
    spdlog::error("{}", e.what());
    const auto c = e.code();
    const bool input = c == gvmm::ErrorCode::ConfigInvalid || c == gvmm::ErrorCode::UnknownExperiment ||
                       c == gvmm::ErrorCode::IoError;
    return input ? kExitInvalid : kExitFail;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFail;
  }
}
