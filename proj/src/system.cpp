// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/system.hpp"

#include "d2map/error.hpp"

namespace d2map {

SystemStep advance(const System& system, const SystemState& state,
                   std::size_t k) {
  if (!system.red) {
    auto [next, record] = core::step(state.map, system.link, system.sender, k);
    return {{next, state.red}, record};
  }
  auto r = red::red_step({state.map, state.red}, system.link, system.sender,
                         *system.red, k);
  return {{r.next.map, r.next.red}, r.record};
}

std::vector<core::StepRecord> simulate(const System& system,
                                       std::size_t transient,
                                       std::size_t samples) {
  if (!system.red)
    return core::orbit(system.initial, system.link, system.sender, transient,
                       samples);

  core::validate(system.initial);
  if (samples == 0) fail(ErrorKind::kInvalidArgument, "samples must be >= 1");
  std::vector<core::StepRecord> records;
  records.reserve(samples);
  SystemState state{system.initial, {}};
  for (std::size_t k = 0; k < transient + samples; ++k) {
    auto [next, record] = advance(system, state, k);
    if (k >= transient) records.push_back(record);
    state = next;
  }
  return records;
}

}  // namespace d2map
