// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the libd2map C interface.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "d2map/d2map.h"

namespace {

int report(d2map_status status, const char* what) {
  std::fprintf(stderr, "d2map: %s: %s: %s\n", what, d2map_status_name(status),
               d2map_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time D2TCP/DCTCP threshold-marking map explorer"};

  std::string command;
  std::string scenario_path;
  std::string out_path;
  bool svg = false;
  double tolerance = 1e-6;
  std::size_t max_period = 32;
  std::optional<std::string> observable;
  std::size_t order = 1;
  bool log_grid = false;
  unsigned threads = 1;
  std::optional<double> frozen;
  std::vector<double> domain;
  std::size_t resolution = 1000;
  std::size_t iterations = 10000;
  double separation = 1e-8;

  app.add_option("command", command,
                 "orbit | bifurcate | cobweb | return-map | map-graph | "
                 "red-curve | period | lyapunov")
      ->required()
      ->check(CLI::IsMember({"orbit", "bifurcate", "cobweb", "return-map",
                             "map-graph", "red-curve", "period", "lyapunov"}));
  app.add_option("--scenario", scenario_path, "scenario file (JSON)")
      ->required();
  app.add_option("--out", out_path, "output CSV path")->required();
  app.add_flag("--svg", svg, "also write an SVG next to the CSV");
  app.add_option("--tolerance", tolerance,
                 "period / distinct-value tolerance")
      ->capture_default_str();
  app.add_option("--max-period", max_period, "largest period tested")
      ->capture_default_str();
  app.add_option("--observable", observable, "queue | window | alpha");
  app.add_option("--order", order, "return-map order")->capture_default_str();
  app.add_flag("--log-grid", log_grid, "geometric sweep grid");
  app.add_option("--threads", threads, "sweep threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--frozen", frozen,
                 "map-graph: value of the state variable held fixed");
  app.add_option("--domain", domain, "map-graph: FROM TO")->expected(2);
  app.add_option("--resolution", resolution,
                 "map-graph / red-curve grid points")
      ->capture_default_str();
  app.add_option("--iterations", iterations, "lyapunov iterations")
      ->capture_default_str();
  app.add_option("--separation", separation, "lyapunov twin separation")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  d2map_scenario* scenario = nullptr;
  if (auto st = d2map_scenario_load(scenario_path.c_str(), &scenario);
      st != D2MAP_OK)
    return report(st, "loading scenario");

  d2map_command_options options;
  d2map_command_options_init(&options);
  options.svg = svg ? 1 : 0;
  options.tolerance = tolerance;
  options.max_period = max_period;
  options.observable = observable ? observable->c_str() : nullptr;
  options.order = order;
  options.log_grid = log_grid ? 1 : 0;
  options.threads = threads;
  if (frozen) {
    options.has_frozen = 1;
    options.frozen = *frozen;
  }
  if (domain.size() == 2) {
    options.has_domain = 1;
    options.domain_from = domain[0];
    options.domain_to = domain[1];
  }
  options.resolution = resolution;
  options.iterations = iterations;
  options.separation = separation;

  char* summary = nullptr;
  const d2map_status st = d2map_run_command(command.c_str(), scenario, &options,
                                            out_path.c_str(), &summary);
  d2map_scenario_free(scenario);
  if (st != D2MAP_OK) return report(st, command.c_str());
  std::printf("%s\n", summary);
  d2map_string_free(summary);
  return 0;
}
