// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/core_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "d2map/error.hpp"

namespace d2map::core {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::kValidation, what);
}

}  // namespace

LinkParams::LinkParams(double capacity_bps, double prop_delay_s,
                       double packet_size_bits, double buffer_packets,
                       double threshold_packets)
    : capacity_(capacity_bps),
      prop_delay_(prop_delay_s),
      packet_size_(packet_size_bits),
      buffer_(buffer_packets),
      threshold_(threshold_packets) {
  require(std::isfinite(capacity_) && capacity_ > 0,
          "capacity_bps must be > 0");
  require(std::isfinite(prop_delay_) && prop_delay_ >= 0,
          "prop_delay_s must be >= 0");
  require(std::isfinite(packet_size_) && packet_size_ > 0,
          "packet_size_bits must be > 0");
  require(std::isfinite(buffer_) && buffer_ > 0, "buffer_packets must be > 0");
  require(std::isfinite(threshold_) && threshold_ > 0,
          "threshold_packets must be > 0");
  require(threshold_ < buffer_,
          "threshold_packets must be < buffer_packets");
}

LinkParams LinkParams::with_prop_delay(double d) const {
  return {capacity_, d, packet_size_, buffer_, threshold_};
}

LinkParams LinkParams::with_threshold(double k) const {
  return {capacity_, prop_delay_, packet_size_, buffer_, k};
}

SenderParams::SenderParams(double g, double gamma) : g_(g), gamma_(gamma) {
  require(std::isfinite(g_) && g_ > 0 && g_ < 1, "g must be in (0, 1)");
  require(std::isfinite(gamma_) && gamma_ > 0, "gamma must be > 0");
}

void validate(const MapState& state) {
  require(std::isfinite(state.window) && state.window > 0,
          "window_packets must be > 0");
  require(state.alpha >= 0 && state.alpha <= 1, "alpha must be in [0, 1]");
}

double bandwidth_delay_product(const LinkParams& link) {
  return link.capacity() * link.prop_delay() / link.packet_size();
}

double border(const LinkParams& link) {
  return link.threshold() + bandwidth_delay_product(link);
}

double queue_next(double window, const LinkParams& link) {
  return std::min(std::max(window - bandwidth_delay_product(link), 0.0),
                  link.buffer());
}

bool mark(double queue, const LinkParams& link) {
  return queue > link.threshold();
}

double round_trip_time(double queue, const LinkParams& link) {
  return link.prop_delay() + queue * link.packet_size() / link.capacity();
}

double decrease_factor(double alpha, double gamma) {
  return 1.0 - std::pow(alpha, gamma) / 2.0;
}

StepResult step(const MapState& state, const LinkParams& link,
                const SenderParams& sender, std::size_t k) {
  const double q = queue_next(state.window, link);
  const bool marked = mark(q, link);
  const double g = sender.g();

  StepResult out;
  out.record = {k, state.window, state.alpha, q, marked,
                round_trip_time(q, link)};
  if (marked) {
    out.next.window = decrease_factor(state.alpha, sender.gamma()) * state.window;
    out.next.alpha = (1.0 - g) * state.alpha + g;
  } else {
    out.next.window = state.window + 1.0;
    out.next.alpha = (1.0 - g) * state.alpha;
  }
  return out;
}

std::vector<StepRecord> orbit(const MapState& initial, const LinkParams& link,
                              const SenderParams& sender, std::size_t transient,
                              std::size_t samples) {
  validate(initial);
  if (samples == 0) fail(ErrorKind::kInvalidArgument, "samples must be >= 1");

  std::vector<StepRecord> records;
  records.reserve(samples);
  MapState state = initial;
  for (std::size_t k = 0; k < transient + samples; ++k) {
    auto [next, record] = step(state, link, sender, k);
    if (k >= transient) records.push_back(record);
    state = next;
  }
  return records;
}

}  // namespace d2map::core
