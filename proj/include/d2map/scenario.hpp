// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "d2map/analysis.hpp"
#include "d2map/system.hpp"

namespace d2map::io {

struct RunSpec {
  std::size_t transient = 5000;
  std::size_t samples = 1000;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

// A run or sweep description. When present, `sweep` carries the run's
// transient and samples.
struct Scenario {
  System system;
  RunSpec run;
  std::optional<analysis::SweepSpec> sweep;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Scenario documents are JSON (comments allowed) with these sections:
//
//   link:    capacity_bps, prop_delay_s, packet_size_bits, buffer_packets,
//            threshold_packets
//   sender:  g, gamma
//   marking: kind ("threshold" | "red"),
//            red: { weight, q_min_packets, q_max_packets, p_max }
//   initial: window_packets (1.0), alpha (0.0)          optional
//   run:     transient (5000), samples (1000)           optional
//   sweep:   parameter, from, to, step, observable      optional
//
// Unknown keys are rejected. Errors are reported as Error(kParse) with a
// line and column, or Error(kValidation) naming the offending key.
Scenario parse_scenario(std::string_view text,
                        std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

std::string serialize_scenario(const Scenario& scenario);

}  // namespace d2map::io
