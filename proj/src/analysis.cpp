// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "d2map/error.hpp"

namespace d2map::analysis {

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::kG: return "g";
    case Parameter::kDelay: return "d";
    case Parameter::kThreshold: return "K";
    case Parameter::kGamma: return "gamma";
  }
  return "?";
}

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::kQueue: return "queue";
    case Observable::kWindow: return "window";
    case Observable::kAlpha: return "alpha";
  }
  return "?";
}

std::string_view to_string(ExtremumKind k) {
  switch (k) {
    case ExtremumKind::kMax: return "max";
    case ExtremumKind::kMin: return "min";
    case ExtremumKind::kBoth: return "both";
  }
  return "?";
}

Parameter parse_parameter(std::string_view name) {
  if (name == "g") return Parameter::kG;
  if (name == "d") return Parameter::kDelay;
  if (name == "K") return Parameter::kThreshold;
  if (name == "gamma") return Parameter::kGamma;
  fail(ErrorKind::kInvalidArgument,
       "unknown sweep parameter '" + std::string(name) +
           "' (expected g, d, K or gamma)");
}

Observable parse_observable(std::string_view name) {
  if (name == "queue") return Observable::kQueue;
  if (name == "window") return Observable::kWindow;
  if (name == "alpha") return Observable::kAlpha;
  fail(ErrorKind::kInvalidArgument,
       "unknown observable '" + std::string(name) +
           "' (expected queue, window or alpha)");
}

namespace {

std::size_t grid_size(const SweepSpec& spec) {
  const double span = (spec.to - spec.from) / spec.step;
  if (!std::isfinite(span) || span > 1e8)
    fail(ErrorKind::kValidation, "sweep grid is too large");
  // The relative slack keeps `to` on the grid when (to - from) / step is an
  // integer up to rounding.
  return static_cast<std::size_t>(std::floor(span * (1.0 + 1e-12) + 1e-9)) + 1;
}

}  // namespace

void validate(const SweepSpec& spec) {
  if (!(std::isfinite(spec.from) && std::isfinite(spec.to) &&
        spec.from < spec.to))
    fail(ErrorKind::kValidation, "sweep.from must be < sweep.to");
  if (!(std::isfinite(spec.step) && spec.step > 0))
    fail(ErrorKind::kValidation, "sweep.step must be > 0");
  if (spec.samples < 3)
    fail(ErrorKind::kValidation, "run.samples must be >= 3 for a sweep");
  if (spec.log_grid && spec.from <= 0)
    fail(ErrorKind::kValidation, "a logarithmic grid needs sweep.from > 0");
  if (grid_size(spec) < 2)
    fail(ErrorKind::kValidation, "sweep grid must contain at least 2 points");
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  validate(spec);
  const std::size_t n = grid_size(spec);
  std::vector<double> grid(n);
  if (spec.log_grid) {
    const double ratio = std::log(spec.to / spec.from);
    for (std::size_t i = 0; i < n; ++i)
      grid[i] = spec.from * std::exp(ratio * static_cast<double>(i) /
                                     static_cast<double>(n - 1));
    grid.back() = spec.to;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      grid[i] = std::min(spec.from + static_cast<double>(i) * spec.step,
                         spec.to);
  }
  return grid;
}

System with_parameter(const System& base, Parameter p, double value) {
  System s = base;
  switch (p) {
    case Parameter::kG: s.sender = base.sender.with_g(value); break;
    case Parameter::kGamma: s.sender = base.sender.with_gamma(value); break;
    case Parameter::kDelay: s.link = base.link.with_prop_delay(value); break;
    case Parameter::kThreshold: s.link = base.link.with_threshold(value); break;
  }
  return s;
}

double observe(const core::StepRecord& r, Observable o) {
  switch (o) {
    case Observable::kQueue: return r.queue;
    case Observable::kWindow: return r.window;
    case Observable::kAlpha: return r.alpha;
  }
  return 0.0;
}

std::vector<double> observe(std::span<const core::StepRecord> records,
                            Observable o) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(observe(r, o));
  return out;
}

std::vector<Extremum> local_extrema(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 3) fail(ErrorKind::kInvalidArgument, "insufficient series");

  std::vector<Extremum> out;
  std::size_t i = 1;
  while (i + 1 < n) {
    std::size_t j = i;
    while (j + 1 < n && series[j + 1] == series[i]) ++j;
    if (j + 1 >= n) break;  // plateau runs into the end of the series
    const double prev = series[i - 1];
    const double next = series[j + 1];
    const double x = series[i];
    if (x > prev && x > next)
      out.push_back({x, ExtremumKind::kMax, i});
    else if (x < prev && x < next)
      out.push_back({x, ExtremumKind::kMin, i});
    i = j + 1;
  }
  if (out.empty()) out.push_back({series.back(), ExtremumKind::kBoth, n - 1});
  return out;
}

std::vector<BifurcationPoint> sweep_bifurcation(const SweepSpec& spec,
                                                const System& base,
                                                unsigned threads) {
  const std::vector<double> grid = sweep_grid(spec);
  std::vector<std::vector<BifurcationPoint>> per_point(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());

  auto evaluate = [&](std::size_t i) {
    try {
      const System sys = with_parameter(base, spec.parameter, grid[i]);
      const auto records = simulate(sys, spec.transient, spec.samples);
      const auto series = observe(records, spec.observable);
      for (const auto& e : local_extrema(series))
        per_point[i].push_back({grid[i], e.value, e.kind});
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) evaluate(i);
      });
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<BifurcationPoint> out;
  for (auto& pts : per_point) out.insert(out.end(), pts.begin(), pts.end());
  return out;
}

PeriodResult detect_period(std::span<const double> series, double tolerance,
                           std::size_t max_period) {
  if (!(tolerance > 0))
    fail(ErrorKind::kInvalidArgument, "tolerance must be > 0");
  if (max_period < 1)
    fail(ErrorKind::kInvalidArgument, "max_period must be >= 1");
  if (series.size() < 2 * max_period)
    fail(ErrorKind::kInvalidArgument,
         "series too short for max_period " + std::to_string(max_period));

  for (std::size_t p = 1; p <= max_period; ++p) {
    bool repeats = true;
    for (std::size_t k = 0; k + p < series.size() && repeats; ++k)
      repeats = std::abs(series[k + p] - series[k]) <= tolerance;
    if (repeats) return {p, tolerance};
  }
  return {std::nullopt, tolerance};
}

std::vector<Point> return_map(std::span<const double> series,
                              std::size_t order) {
  if (order < 1) fail(ErrorKind::kInvalidArgument, "order must be >= 1");
  if (series.size() <= order)
    fail(ErrorKind::kInvalidArgument, "series shorter than order + 1");
  std::vector<Point> out;
  out.reserve(series.size() - order);
  for (std::size_t k = 0; k + order < series.size(); ++k)
    out.push_back({series[k], series[k + order]});
  return out;
}

std::vector<Point> map_graph(Observable observable, double frozen_other,
                             const System& system, double domain_from,
                             double domain_to, std::size_t resolution) {
  if (observable == Observable::kQueue)
    fail(ErrorKind::kInvalidArgument,
         "map-graph observable must be window or alpha");
  if (!(domain_from < domain_to))
    fail(ErrorKind::kInvalidArgument, "domain_from must be < domain_to");
  if (resolution < 2)
    fail(ErrorKind::kInvalidArgument, "resolution must be >= 2");

  std::vector<Point> out;
  out.reserve(resolution);
  const double h = (domain_to - domain_from) / static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x =
        i + 1 == resolution ? domain_to : domain_from + static_cast<double>(i) * h;
    SystemState s;
    if (observable == Observable::kWindow)
      s.map = {x, frozen_other};
    else
      s.map = {frozen_other, x};
    const auto next = advance(system, s).next.map;
    out.push_back(
        {x, observable == Observable::kWindow ? next.window : next.alpha});
  }
  return out;
}

std::vector<Segment> cobweb(std::span<const double> series) {
  if (series.size() < 3)
    fail(ErrorKind::kInvalidArgument, "insufficient series");
  std::vector<Segment> out;
  out.reserve(2 * (series.size() - 2));
  for (std::size_t k = 0; k + 2 < series.size(); ++k) {
    const double a = series[k], b = series[k + 1], c = series[k + 2];
    out.push_back({{a, b}, {b, b}});
    out.push_back({{b, b}, {b, c}});
  }
  return out;
}

double lyapunov_estimate(const System& system, std::size_t transient,
                         std::size_t iterations, double separation) {
  if (!(separation > 0 && std::isfinite(separation)))
    fail(ErrorKind::kInvalidArgument, "separation must be > 0");
  if (iterations < 1000)
    fail(ErrorKind::kInvalidArgument, "iterations must be >= 1000");
  core::validate(system.initial);

  SystemState ref{system.initial, {}};
  for (std::size_t k = 0; k < transient; ++k) ref = advance(system, ref).next;

  auto perturbed = [&](const SystemState& s) {
    SystemState p = s;
    p.map.window += separation;
    return p;
  };

  SystemState twin = perturbed(ref);
  double sum = 0.0;
  for (std::size_t k = 0; k < iterations; ++k) {
    const auto a = advance(system, ref);
    const auto b = advance(system, twin);
    const double dw = b.next.map.window - a.next.map.window;
    const double da = b.next.map.alpha - a.next.map.alpha;
    const double dq = b.next.red.avg_queue - a.next.red.avg_queue;
    const double dist = std::sqrt(dw * dw + da * da + dq * dq);
    ref = a.next;
    if (dist > 0 && std::isfinite(dist)) {
      sum += std::log(dist / separation);
      const double s = separation / dist;
      twin = ref;
      twin.map.window += dw * s;
      twin.map.alpha = std::clamp(twin.map.alpha + da * s, 0.0, 1.0);
      twin.red.avg_queue += dq * s;
    } else {
      // The twins merged to rounding precision: count the contraction of the
      // branch taken and restart the perturbation.
      const double rate =
          a.record.marked
              ? std::max(core::decrease_factor(a.record.alpha,
                                               system.sender.gamma()),
                         1.0 - system.sender.g())
              : 1.0;
      sum += std::log(rate);
      twin = perturbed(ref);
    }
  }
  return sum / static_cast<double>(iterations);
}

std::size_t count_distinct(std::vector<double> values, double tolerance) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  std::size_t n = 1;
  double anchor = values.front();
  for (double v : values)
    if (v - anchor > tolerance) {
      ++n;
      anchor = v;
    }
  return n;
}

}  // namespace d2map::analysis
