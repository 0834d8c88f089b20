// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace d2map::core {

// Link and switch constants. Units: bits per second, seconds, bits,
// packets. The marking threshold must lie strictly inside the buffer so
// that marking on the clamped queue is equivalent to comparing the window
// against the border K + C*d/M.
class LinkParams {
 public:
  LinkParams(double capacity_bps, double prop_delay_s, double packet_size_bits,
             double buffer_packets, double threshold_packets);

  double capacity() const noexcept { return capacity_; }
  double prop_delay() const noexcept { return prop_delay_; }
  double packet_size() const noexcept { return packet_size_; }
  double buffer() const noexcept { return buffer_; }
  double threshold() const noexcept { return threshold_; }

  LinkParams with_prop_delay(double d) const;
  LinkParams with_threshold(double k) const;

  friend bool operator==(const LinkParams&, const LinkParams&) = default;

 private:
  double capacity_;
  double prop_delay_;
  double packet_size_;
  double buffer_;
  double threshold_;
};

// D2TCP sender constants: EWMA weight g and deadline exponent gamma
// (gamma == 1 is plain DCTCP).
class SenderParams {
 public:
  SenderParams(double g, double gamma);

  double g() const noexcept { return g_; }
  double gamma() const noexcept { return gamma_; }

  SenderParams with_g(double g) const { return {g, gamma_}; }
  SenderParams with_gamma(double gamma) const { return {g_, gamma}; }

  friend bool operator==(const SenderParams&, const SenderParams&) = default;

 private:
  double g_;
  double gamma_;
};

struct MapState {
  double window = 1.0;  // packets, > 0
  double alpha = 0.0;   // congestion history, [0, 1]

  friend bool operator==(const MapState&, const MapState&) = default;
};

// Throws Error(kValidation) unless window > 0 and alpha in [0, 1].
void validate(const MapState& state);

// Observable snapshot of one sample. `queue`, `marked` and `rtt` describe the
// queue produced by `window` during the following interval.
struct StepRecord {
  std::size_t k = 0;
  double window = 0.0;
  double alpha = 0.0;
  double queue = 0.0;
  bool marked = false;
  double rtt = 0.0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

double bandwidth_delay_product(const LinkParams& link);

// Window value at which the switch starts marking: K + C*d/M.
double border(const LinkParams& link);

// min(max(W - C*d/M, 0), B)
double queue_next(double window, const LinkParams& link);

// Hard threshold: true iff queue > K. A queue exactly at K is not marked.
bool mark(double queue, const LinkParams& link);

double round_trip_time(double queue, const LinkParams& link);

// Marked-branch window multiplier 1 - alpha^gamma / 2.
double decrease_factor(double alpha, double gamma);

struct StepResult {
  MapState next;
  StepRecord record;
};

// One RTT of the map. Both state updates read the pre-step (W, alpha).
StepResult step(const MapState& state, const LinkParams& link,
                const SenderParams& sender, std::size_t k = 0);

// Iterates transient + samples steps from `initial` and returns the records
// of the last `samples` steps.
std::vector<StepRecord> orbit(const MapState& initial, const LinkParams& link,
                              const SenderParams& sender, std::size_t transient,
                              std::size_t samples);

}  // namespace d2map::core
