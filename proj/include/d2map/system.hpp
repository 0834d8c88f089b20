// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "d2map/core_map.hpp"
#include "d2map/red_policy.hpp"

namespace d2map {

// A fully specified map: link, sender, marking policy and initial state.
// With no RED parameters the switch uses the hard threshold K.
struct System {
  core::LinkParams link;
  core::SenderParams sender;
  std::optional<red::RedParams> red;
  core::MapState initial;

  friend bool operator==(const System&, const System&) = default;
};

struct SystemState {
  core::MapState map;
  red::RedState red;
};

struct SystemStep {
  SystemState next;
  core::StepRecord record;
};

SystemStep advance(const System& system, const SystemState& state,
                   std::size_t k = 0);

std::vector<core::StepRecord> simulate(const System& system,
                                       std::size_t transient,
                                       std::size_t samples);

}  // namespace d2map
