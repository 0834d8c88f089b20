// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "d2map/analysis.hpp"
#include "d2map/scenario.hpp"

namespace d2map::io {

struct CommandOptions {
  bool svg = false;
  double tolerance = 1e-6;
  std::size_t max_period = 32;
  std::optional<analysis::Observable> observable;
  std::size_t order = 1;
  bool log_grid = false;
  unsigned threads = 1;
  // map-graph
  std::optional<double> frozen;
  std::optional<std::pair<double, double>> domain;
  std::size_t resolution = 1000;
  // lyapunov
  std::size_t iterations = 10000;
  double separation = 1e-8;
};

struct CommandOutput {
  std::string csv;
  std::optional<std::string> svg;
  std::string summary;  // one line, no trailing newline
};

bool is_command(std::string_view command);

// Pure part of a command: produces the documents without touching the disk.
CommandOutput execute(std::string_view command, const Scenario& scenario,
                      const CommandOptions& options);

// Writes the CSV to `out` and, when requested, the SVG next to it (same stem,
// .svg extension). Returns the summary line.
std::string run_command(std::string_view command, const Scenario& scenario,
                        const CommandOptions& options,
                        const std::filesystem::path& out);

std::filesystem::path svg_path_for(const std::filesystem::path& out);

}  // namespace d2map::io
