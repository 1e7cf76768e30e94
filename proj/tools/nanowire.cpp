// SPDX-License-Identifier: Apache-2.0
// nanowire: run, validate and plot actin-nanowire channel scenarios.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "nanowire/cli/config.hpp"
#include "nanowire/cli/csv.hpp"
#include "nanowire/cli/plots.hpp"
#include "nanowire/cli/scenario.hpp"
#include "nanowire/error.hpp"

#ifndef NANOWIRE_VERSION
#define NANOWIRE_VERSION "0.0.0"
#endif

namespace {

using namespace nanowire;
using namespace nanowire::cli;

enum Exit { kOk = 0, kChecksFailed = 1, kParse = 2, kValidation = 3, kSolver = 4, kIo = 5 };

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse: return kParse;
    case ErrorCategory::Validation: return kValidation;
    case ErrorCategory::Solver: return kSolver;
    case ErrorCategory::Io: return kIo;
  }
  return kSolver;
}

ScenarioConfig load_or_default(const std::string& path) {
  return path.empty() ? parse_config("", "<defaults>") : load_config(path);
}

void report(const ResultBundle& b) {
  fmt::print("wrote {} files to {} ({:.2f} s)\n", b.files.size(), b.dir.string(), b.wall_time);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actin-nanowire molecular communication channel simulator"};
  app.set_version_flag("--version", std::string(NANOWIRE_VERSION));
  app.require_subcommand(1);

  std::string config_path, output, param, plot_dir;
  std::vector<std::string> values;
  bool no_plots = false;

  auto* run = app.add_subcommand("run", "Run the solver selected in a config (default parameters without one)");
  run->add_option("config", config_path, "YAML scenario file");
  run->add_option("-o,--output", output, "Override output_dir");
  run->add_flag("--no-plots", no_plots, "Skip SVG emission");

  auto* validate = app.add_subcommand("validate", "Cross-layer comparison table and half-channel report");
  validate->add_option("config", config_path, "YAML scenario file");
  validate->add_option("-o,--output", output, "Override output_dir");
  validate->add_flag("--no-plots", no_plots, "Skip SVG emission");

  auto* plot = app.add_subcommand("plot", "Regenerate SVG plots from a result directory");
  plot->add_option("dir", plot_dir, "Result directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Run one scenario per value of a parameter");
  sweep->add_option("config", config_path, "YAML scenario file")->required();
  sweep->add_option("--param", param, "Dotted key, e.g. kinetics.k_plus or k_plus")->required();
  sweep->add_option("--values", values, "Values to try")->required()->delimiter(',');
  sweep->add_option("-o,--output", output, "Override the parent output_dir");
  sweep->add_flag("--no-plots", no_plots, "Skip SVG emission");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*run || *validate) {
      ScenarioConfig config = load_or_default(config_path);
      if (*validate) {
        config.solver = Solver::Validate;
        if (!config.ssa.seed) config.ssa.seed = 1;
      }
      if (!output.empty()) config.output_dir = output;
      if (no_plots) config.plots = false;
      const auto bundle = run_scenario(config);
      report(bundle);
      if (!bundle.checks_passed) {
        fmt::print(stderr, "validation: one or more checks failed, see {}\n",
                   (bundle.dir / "validation_report.md").string());
        return kChecksFailed;
      }
      return kOk;
    }
    if (*plot) {
      for (const auto& f : emit_plots(plot_dir)) fmt::print("{}\n", (std::filesystem::path(plot_dir) / f).string());
      return kOk;
    }
    if (*sweep) {
      ScenarioConfig base = load_config(config_path);
      if (!output.empty()) base.output_dir = output;
      if (no_plots) base.plots = false;
      const std::string key = param.find('.') == std::string::npos ? "kinetics." + param : param;
      std::filesystem::create_directories(base.output_dir);
      CsvWriter index(base.output_dir / "sweep.csv", {"param", "value", "output_dir", "checks_passed"});
      bool all_ok = true;
      for (const auto& v : values) {
        ScenarioConfig c = base;
        set_config_value(c, key, v);
        c.output_dir = base.output_dir / fmt::format("{}={}", key, v);
        const auto bundle = run_scenario(c);
        report(bundle);
        all_ok = all_ok && bundle.checks_passed;
        index << key << v << c.output_dir.generic_string() << (bundle.checks_passed ? "true" : "false");
        index.end_row();
      }
      index.close();
      return all_ok ? kOk : kChecksFailed;
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  }
  return kOk;
}
