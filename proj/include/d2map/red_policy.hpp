// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "d2map/core_map.hpp"

namespace d2map::red {

// RED marking parameters. A weight of 1 makes the average track the
// instantaneous queue.
class RedParams {
 public:
  RedParams(double weight, double q_min, double q_max, double p_max);

  double weight() const noexcept { return weight_; }
  double q_min() const noexcept { return q_min_; }
  double q_max() const noexcept { return q_max_; }
  double p_max() const noexcept { return p_max_; }

  friend bool operator==(const RedParams&, const RedParams&) = default;

 private:
  double weight_;
  double q_min_;
  double q_max_;
  double p_max_;
};

struct RedState {
  double avg_queue = 0.0;

  friend bool operator==(const RedState&, const RedState&) = default;
};

// (1 - w) * avg + w * q
RedState ewma_update(const RedState& state, double instantaneous_queue,
                     const RedParams& params);

// Piecewise-linear marking probability. When q_min == q_max the ramp has no
// width: 0 up to and including q_min, 1 above it.
double red_probability(double avg_queue, const RedParams& params);

// The DCTCP hard threshold expressed as RED: q_min = q_max = K, p_max = 1,
// weight 1 (instantaneous queue).
RedParams threshold_policy(const core::LinkParams& link);

// Experimental coupling of a D2TCP sender with general RED. The fractional
// probability is fed into the alpha update as the marked fraction, and the
// window is cut whenever it is positive.
struct RedMapState {
  core::MapState map;
  RedState red;

  friend bool operator==(const RedMapState&, const RedMapState&) = default;
};

struct RedStepResult {
  RedMapState next;
  core::StepRecord record;
  double probability = 0.0;
};

RedStepResult red_step(const RedMapState& state, const core::LinkParams& link,
                       const core::SenderParams& sender,
                       const RedParams& params, std::size_t k = 0);

}  // namespace d2map::red
