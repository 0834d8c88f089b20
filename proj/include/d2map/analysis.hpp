// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "d2map/core_map.hpp"
#include "d2map/system.hpp"

namespace d2map::analysis {

enum class Parameter { kG, kDelay, kThreshold, kGamma };
enum class Observable { kQueue, kWindow, kAlpha };
enum class ExtremumKind { kMax, kMin, kBoth };

std::string_view to_string(Parameter p);
std::string_view to_string(Observable o);
std::string_view to_string(ExtremumKind k);
// Accepted names: "g", "d", "K", "gamma".
Parameter parse_parameter(std::string_view name);
Observable parse_observable(std::string_view name);

struct SweepSpec {
  Parameter parameter = Parameter::kG;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  Observable observable = Observable::kQueue;
  std::size_t transient = 5000;
  std::size_t samples = 1000;
  // Geometric spacing with the same point count as the linear grid.
  bool log_grid = false;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

void validate(const SweepSpec& spec);

// Linear grid from + i*step, inclusive of `from`, never past `to`.
std::vector<double> sweep_grid(const SweepSpec& spec);

System with_parameter(const System& base, Parameter p, double value);

double observe(const core::StepRecord& r, Observable o);
std::vector<double> observe(std::span<const core::StepRecord> records,
                            Observable o);

struct Extremum {
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::kMax;
  std::size_t index = 0;
};

struct BifurcationPoint {
  double param_value = 0.0;
  double observable_value = 0.0;
  ExtremumKind kind = ExtremumKind::kMax;

  friend bool operator==(const BifurcationPoint&,
                         const BifurcationPoint&) = default;
};

struct PeriodResult {
  std::optional<std::size_t> period;
  double tolerance = 0.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point from;
  Point to;
};

// Strict interior turning points. A plateau counts once, at its first index,
// when the values on both sides lie on the same side of it. A series without
// turning points (constant, or still converging monotonically) yields its
// last value tagged kBoth.
std::vector<Extremum> local_extrema(std::span<const double> series);

// Extrema of the steady-state observable for every grid value. Grid points
// are independent restarts from base.initial; the output is ordered by grid
// index, then iteration order, regardless of `threads` (0 = all cores).
std::vector<BifurcationPoint> sweep_bifurcation(const SweepSpec& spec,
                                                const System& base,
                                                unsigned threads = 1);

// Smallest p in [1, max_period] with |x[k+p] - x[k]| <= tolerance for all k.
PeriodResult detect_period(std::span<const double> series, double tolerance,
                           std::size_t max_period);

// Pairs (x[k], x[k+order]).
std::vector<Point> return_map(std::span<const double> series,
                              std::size_t order);

// One-step image of `observable` over [from, to] with the other state
// variable held at `frozen_other`.
std::vector<Point> map_graph(Observable observable, double frozen_other,
                             const System& system, double domain_from,
                             double domain_to, std::size_t resolution);

// Staircase (x[k], x[k+1]) -> (x[k+1], x[k+1]) -> (x[k+1], x[k+2]); 2(n-2)
// segments.
std::vector<Segment> cobweb(std::span<const double> series);

// Largest Lyapunov exponent (per iteration) from a reference orbit and a
// perturbed twin renormalized to `separation` after every step. Border
// crossings between the twins are not treated specially.
double lyapunov_estimate(const System& system, std::size_t transient,
                         std::size_t iterations, double separation);

// Number of clusters after sorting, where a gap larger than `tolerance`
// starts a new cluster.
std::size_t count_distinct(std::vector<double> values, double tolerance);

}  // namespace d2map::analysis
