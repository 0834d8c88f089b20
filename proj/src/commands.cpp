// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/commands.hpp"

#include <algorithm>
#include <array>
#include <string_view>

#include "d2map/error.hpp"
#include "d2map/output.hpp"

namespace d2map::io {

namespace {

using analysis::Observable;
using analysis::Point;

constexpr std::array<std::string_view, 8> kCommands = {
    "orbit",    "bifurcate", "cobweb",    "return-map",
    "map-graph", "red-curve", "period",   "lyapunov"};

std::vector<double> steady_series(const Scenario& s, Observable o) {
  return analysis::observe(simulate(s.system, s.run.transient, s.run.samples),
                           o);
}

std::vector<Point> indexed(std::span<const double> xs, std::size_t first) {
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    pts.push_back({static_cast<double>(first + i), xs[i]});
  return pts;
}

CommandOutput orbit(const Scenario& s, const CommandOptions& opt) {
  const auto records = simulate(s.system, s.run.transient, s.run.samples);
  CsvWriter csv("k,window,alpha,queue,marked,rtt_s");
  double q_lo = records.front().queue, q_hi = q_lo;
  for (const auto& r : records) {
    csv.count(r.k).value(r.window).value(r.alpha).value(r.queue)
        .count(r.marked ? 1 : 0).value(r.rtt);
    csv.end_row();
    q_lo = std::min(q_lo, r.queue);
    q_hi = std::max(q_hi, r.queue);
  }
  CommandOutput out{csv.str(), std::nullopt,
                    "samples=" + std::to_string(records.size()) +
                        " queue_min=" + format_value(q_lo) +
                        " queue_max=" + format_value(q_hi)};
  if (opt.svg) {
    SvgPlot plot("time series", "k", "packets");
    const std::size_t first = records.front().k;
    plot.polyline(indexed(analysis::observe(records, Observable::kWindow), first),
                  "steelblue");
    plot.polyline(indexed(analysis::observe(records, Observable::kQueue), first),
                  "firebrick");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput bifurcate(const Scenario& s, const CommandOptions& opt) {
  if (!s.sweep)
    fail(ErrorKind::kMismatch, "bifurcate needs a scenario with a sweep section");
  analysis::SweepSpec spec = *s.sweep;
  if (opt.observable) spec.observable = *opt.observable;
  spec.log_grid = spec.log_grid || opt.log_grid;

  const auto points = analysis::sweep_bifurcation(spec, s.system, opt.threads);
  CsvWriter csv("param,observable,kind");
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    csv.value(p.param_value).value(p.observable_value).text(to_string(p.kind));
    csv.end_row();
    pts.push_back({p.param_value, p.observable_value});
  }
  CommandOutput out{csv.str(), std::nullopt,
                    "grid=" + std::to_string(analysis::sweep_grid(spec).size()) +
                        " points=" + std::to_string(points.size())};
  if (opt.svg) {
    SvgPlot plot("bifurcation diagram", std::string(to_string(spec.parameter)),
                 std::string(to_string(spec.observable)));
    plot.points(pts, "black");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput cobweb(const Scenario& s, const CommandOptions& opt) {
  const auto series =
      steady_series(s, opt.observable.value_or(Observable::kWindow));
  const auto segs = analysis::cobweb(series);
  CsvWriter csv("x1,y1,x2,y2");
  std::vector<double> corners;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    csv.value(seg.from.x).value(seg.from.y).value(seg.to.x).value(seg.to.y);
    csv.end_row();
    if (i % 2 == 0) corners.push_back(seg.to.x);
  }
  CommandOutput out{
      csv.str(), std::nullopt,
      "segments=" + std::to_string(segs.size()) + " corners=" +
          std::to_string(analysis::count_distinct(corners, opt.tolerance))};
  if (opt.svg) {
    SvgPlot plot("cobweb", "x_k", "x_k+1");
    plot.diagonal("gray");
    plot.segments(segs, "steelblue");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput return_map(const Scenario& s, const CommandOptions& opt) {
  const auto series =
      steady_series(s, opt.observable.value_or(Observable::kWindow));
  const auto pairs = analysis::return_map(series, opt.order);
  CsvWriter csv("x,y");
  for (const auto& p : pairs) {
    csv.value(p.x).value(p.y);
    csv.end_row();
  }
  CommandOutput out{csv.str(), std::nullopt,
                    "order=" + std::to_string(opt.order) +
                        " pairs=" + std::to_string(pairs.size())};
  if (opt.svg) {
    SvgPlot plot("return map (order " + std::to_string(opt.order) + ")", "x_k",
                 "x_k+" + std::to_string(opt.order));
    plot.diagonal("gray");
    plot.points(pairs, "black");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput map_graph(const Scenario& s, const CommandOptions& opt) {
  const Observable o = opt.observable.value_or(Observable::kWindow);
  if (o == Observable::kQueue)
    fail(ErrorKind::kInvalidArgument,
         "map-graph observable must be window or alpha");
  const bool window = o == Observable::kWindow;
  const double frozen = opt.frozen.value_or(window ? s.system.initial.alpha
                                                   : s.system.initial.window);
  std::pair<double, double> domain{0.0, 1.0};
  if (opt.domain) {
    domain = *opt.domain;
  } else if (window) {
    domain = {1.0, std::max(2.0, 2.0 * core::border(s.system.link))};
  }
  const auto graph = analysis::map_graph(o, frozen, s.system, domain.first,
                                         domain.second, opt.resolution);
  CsvWriter csv("input,output");
  for (const auto& p : graph) {
    csv.value(p.x).value(p.y);
    csv.end_row();
  }
  CommandOutput out{csv.str(), std::nullopt,
                    "border=" + format_value(core::border(s.system.link)) +
                        " frozen=" + format_value(frozen)};
  if (opt.svg) {
    SvgPlot plot("one-step map", std::string(to_string(o)) + "_k",
                 std::string(to_string(o)) + "_k+1");
    plot.diagonal("gray");
    plot.points(graph, "black");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput red_curve(const Scenario& s, const CommandOptions& opt) {
  const red::RedParams params =
      s.system.red.value_or(red::threshold_policy(s.system.link));
  if (opt.resolution < 2)
    fail(ErrorKind::kInvalidArgument, "resolution must be >= 2");
  CsvWriter csv("avg_queue,probability");
  std::vector<Point> pts;
  const double top = s.system.link.buffer();
  for (std::size_t i = 0; i < opt.resolution; ++i) {
    const double q = i + 1 == opt.resolution
                         ? top
                         : top * static_cast<double>(i) /
                               static_cast<double>(opt.resolution - 1);
    const double p = red::red_probability(q, params);
    csv.value(q).value(p);
    csv.end_row();
    pts.push_back({q, p});
  }
  CommandOutput out{csv.str(), std::nullopt,
                    std::string("marking=") +
                        (s.system.red ? "red" : "threshold") +
                        " q_min=" + format_value(params.q_min()) +
                        " q_max=" + format_value(params.q_max()) +
                        " p_max=" + format_value(params.p_max())};
  if (opt.svg) {
    SvgPlot plot("marking probability", "average queue (packets)",
                 "probability");
    plot.polyline(pts, "firebrick");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput period(const Scenario& s, const CommandOptions& opt) {
  const Observable o = opt.observable.value_or(Observable::kQueue);
  const auto series = steady_series(s, o);
  const auto result =
      analysis::detect_period(series, opt.tolerance, opt.max_period);
  const std::string p =
      result.period ? std::to_string(*result.period) : std::string("none");
  CsvWriter csv("period,tolerance");
  csv.text(p).value(result.tolerance);
  csv.end_row();
  CommandOutput out{csv.str(), std::nullopt,
                    "period=" + p + " observable=" + std::string(to_string(o))};
  if (opt.svg) {
    SvgPlot plot("steady state (period " + p + ")", "k",
                 std::string(to_string(o)));
    plot.polyline(indexed(series, s.run.transient), "steelblue");
    out.svg = plot.render();
  }
  return out;
}

CommandOutput lyapunov(const Scenario& s, const CommandOptions& opt) {
  const double lambda = analysis::lyapunov_estimate(
      s.system, s.run.transient, opt.iterations, opt.separation);
  CsvWriter csv("exponent,iterations");
  csv.value(lambda).count(opt.iterations);
  csv.end_row();
  return {csv.str(), std::nullopt,
          "exponent=" + format_value(lambda) +
              (lambda > 0 ? " sign=positive" : " sign=non-positive")};
}

}  // namespace

bool is_command(std::string_view command) {
  return std::find(kCommands.begin(), kCommands.end(), command) !=
         kCommands.end();
}

CommandOutput execute(std::string_view command, const Scenario& scenario,
                      const CommandOptions& options) {
  if (command == "orbit") return orbit(scenario, options);
  if (command == "bifurcate") return bifurcate(scenario, options);
  if (command == "cobweb") return cobweb(scenario, options);
  if (command == "return-map") return return_map(scenario, options);
  if (command == "map-graph") return map_graph(scenario, options);
  if (command == "red-curve") return red_curve(scenario, options);
  if (command == "period") return period(scenario, options);
  if (command == "lyapunov") return lyapunov(scenario, options);
  fail(ErrorKind::kInvalidArgument,
       "unknown command '" + std::string(command) + "'");
}

std::filesystem::path svg_path_for(const std::filesystem::path& out) {
  auto svg = out;
  svg.replace_extension(".svg");
  if (svg == out) svg += ".svg";
  return svg;
}

std::string run_command(std::string_view command, const Scenario& scenario,
                        const CommandOptions& options,
                        const std::filesystem::path& out) {
  const CommandOutput result = execute(command, scenario, options);
  write_file(out, result.csv);
  if (options.svg) {
    // lyapunov has nothing to draw; emit an empty plot so --svg never
    // silently skips a file.
    const std::string svg =
        result.svg ? *result.svg
                   : SvgPlot(std::string(command), "", "").render();
    write_file(svg_path_for(out), svg);
  }
  return result.summary;
}

}  // namespace d2map::io
