// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/red_policy.hpp"

#include <cmath>

#include "d2map/error.hpp"

namespace d2map::red {

RedParams::RedParams(double weight, double q_min, double q_max, double p_max)
    : weight_(weight), q_min_(q_min), q_max_(q_max), p_max_(p_max) {
  if (!(weight_ > 0 && weight_ <= 1))
    fail(ErrorKind::kValidation, "red.weight must be in (0, 1]");
  if (!(std::isfinite(q_min_) && q_min_ >= 0))
    fail(ErrorKind::kValidation, "red.q_min_packets must be >= 0");
  if (!(std::isfinite(q_max_) && q_max_ >= q_min_))
    fail(ErrorKind::kValidation, "red.q_max_packets must be >= q_min_packets");
  if (!(p_max_ > 0 && p_max_ <= 1))
    fail(ErrorKind::kValidation, "red.p_max must be in (0, 1]");
}

RedState ewma_update(const RedState& state, double instantaneous_queue,
                     const RedParams& params) {
  const double w = params.weight();
  return {(1.0 - w) * state.avg_queue + w * instantaneous_queue};
}

double red_probability(double avg_queue, const RedParams& params) {
  if (params.q_min() == params.q_max())
    return avg_queue > params.q_max() ? 1.0 : 0.0;
  if (avg_queue < params.q_min()) return 0.0;
  if (avg_queue > params.q_max()) return 1.0;
  return (avg_queue - params.q_min()) / (params.q_max() - params.q_min()) *
         params.p_max();
}

RedParams threshold_policy(const core::LinkParams& link) {
  return {1.0, link.threshold(), link.threshold(), 1.0};
}

RedStepResult red_step(const RedMapState& state, const core::LinkParams& link,
                       const core::SenderParams& sender,
                       const RedParams& params, std::size_t k) {
  const double q = core::queue_next(state.map.window, link);
  const RedState avg = ewma_update(state.red, q, params);
  const double p = red_probability(avg.avg_queue, params);
  const double g = sender.g();

  RedStepResult out;
  out.probability = p;
  out.record = {k,     state.map.window, state.map.alpha,
                q,     p > 0.0,          core::round_trip_time(q, link)};
  out.next.red = avg;
  out.next.map.window =
      p > 0.0 ? core::decrease_factor(state.map.alpha, sender.gamma()) *
                    state.map.window
              : state.map.window + 1.0;
  out.next.map.alpha = (1.0 - g) * state.map.alpha + g * p;
  return out;
}

}  // namespace d2map::red
