// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "d2map/error.hpp"

namespace d2map::io {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void invalid(const std::string& key, const std::string& why) const {
    fail(ErrorKind::kValidation, source_ + ": " + key + ": " + why);
  }

  const json& section(const json& root, const char* name, bool required) const {
    static const json kEmpty = json::object();
    if (!root.contains(name)) {
      if (required) invalid(name, "missing section");
      return kEmpty;
    }
    const json& s = root.at(name);
    if (!s.is_object()) invalid(name, "expected an object");
    return s;
  }

  void only_keys(const json& obj, const std::string& prefix,
                 std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) invalid(prefix + key, "unknown key");
    }
  }

  double number(const json& obj, const std::string& prefix, const char* key,
                std::optional<double> fallback = std::nullopt) const {
    if (!obj.contains(key)) {
      if (!fallback) invalid(prefix + key, "missing required key");
      return *fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) invalid(prefix + key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(prefix + key, "expected a finite number");
    return d;
  }

  std::size_t count(const json& obj, const std::string& prefix, const char* key,
                    std::size_t fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned())
      invalid(prefix + key, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  std::string text(const json& obj, const std::string& prefix,
                   const char* key) const {
    if (!obj.contains(key)) invalid(prefix + key, "missing required key");
    const json& v = obj.at(key);
    if (!v.is_string()) invalid(prefix + key, "expected a string");
    return v.get<std::string>();
  }

  // Re-labels errors thrown by the domain constructors with the source name.
  template <typename F>
  auto validated(F&& make) const {
    try {
      return make();
    } catch (const Error& e) {
      const std::string what = e.what();
      if (what.rfind(source_ + ": ", 0) == 0) throw;
      fail(e.kind(), source_ + ": " + what);
    }
  }

 private:
  std::string source_;
};

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source) {
  const std::string src(source);
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, src + ": parse error at " +
                                line_context(text, e.byte == 0 ? 0 : e.byte - 1) +
                                ": " + e.what());
  }
  if (!root.is_object())
    fail(ErrorKind::kParse, src + ": top level must be an object");

  const Reader r(src);
  r.only_keys(root, "", {"link", "sender", "marking", "initial", "run", "sweep"});

  const json& link = r.section(root, "link", true);
  r.only_keys(link, "link.",
              {"capacity_bps", "prop_delay_s", "packet_size_bits",
               "buffer_packets", "threshold_packets"});
  const json& sender = r.section(root, "sender", true);
  r.only_keys(sender, "sender.", {"g", "gamma"});
  const json& marking = r.section(root, "marking", true);
  r.only_keys(marking, "marking.", {"kind", "red"});
  const json& initial = r.section(root, "initial", false);
  r.only_keys(initial, "initial.", {"window_packets", "alpha"});
  const json& run = r.section(root, "run", false);
  r.only_keys(run, "run.", {"transient", "samples"});

  const double capacity = r.number(link, "link.", "capacity_bps");
  const double delay = r.number(link, "link.", "prop_delay_s");
  const double packet = r.number(link, "link.", "packet_size_bits");
  const double buffer = r.number(link, "link.", "buffer_packets");
  const double threshold = r.number(link, "link.", "threshold_packets");
  const core::LinkParams link_params = r.validated([&] {
    return core::LinkParams(capacity, delay, packet, buffer, threshold);
  });
  const double g = r.number(sender, "sender.", "g");
  const double gamma = r.number(sender, "sender.", "gamma");
  const core::SenderParams sender_params =
      r.validated([&] { return core::SenderParams(g, gamma); });

  std::optional<red::RedParams> red_params;
  const std::string kind = r.text(marking, "marking.", "kind");
  if (kind == "red") {
    const json& red = r.section(marking, "red", true);
    r.only_keys(red, "marking.red.",
                {"weight", "q_min_packets", "q_max_packets", "p_max"});
    const double weight = r.number(red, "marking.red.", "weight");
    const double q_min = r.number(red, "marking.red.", "q_min_packets");
    const double q_max = r.number(red, "marking.red.", "q_max_packets");
    const double p_max = r.number(red, "marking.red.", "p_max");
    red_params = r.validated(
        [&] { return red::RedParams(weight, q_min, q_max, p_max); });
  } else if (kind == "threshold") {
    if (marking.contains("red"))
      r.invalid("marking.red", "only allowed when marking.kind is \"red\"");
  } else {
    r.invalid("marking.kind", "expected \"threshold\" or \"red\"");
  }

  core::MapState init;
  init.window = r.number(initial, "initial.", "window_packets", 1.0);
  init.alpha = r.number(initial, "initial.", "alpha", 0.0);
  r.validated([&] {
    core::validate(init);
    return 0;
  });

  RunSpec run_spec;
  run_spec.transient = r.count(run, "run.", "transient", 5000);
  run_spec.samples = r.count(run, "run.", "samples", 1000);
  Scenario out{System{link_params, sender_params, red_params, init}, run_spec,
               std::nullopt};
  if (out.run.samples == 0) r.invalid("run.samples", "must be >= 1");

  if (root.contains("sweep")) {
    const json& sweep = r.section(root, "sweep", true);
    r.only_keys(sweep, "sweep.",
                {"parameter", "from", "to", "step", "observable"});
    analysis::SweepSpec spec;
    spec.parameter = r.validated([&] {
      return analysis::parse_parameter(r.text(sweep, "sweep.", "parameter"));
    });
    spec.from = r.number(sweep, "sweep.", "from");
    spec.to = r.number(sweep, "sweep.", "to");
    spec.step = r.number(sweep, "sweep.", "step");
    spec.observable = r.validated([&] {
      return analysis::parse_observable(r.text(sweep, "sweep.", "observable"));
    });
    spec.transient = out.run.transient;
    spec.samples = out.run.samples;
    r.validated([&] {
      analysis::validate(spec);
      return 0;
    });
    out.sweep = spec;
  }
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const Scenario& s) {
  const auto& link = s.system.link;
  json root;
  root["link"] = {{"capacity_bps", link.capacity()},
                  {"prop_delay_s", link.prop_delay()},
                  {"packet_size_bits", link.packet_size()},
                  {"buffer_packets", link.buffer()},
                  {"threshold_packets", link.threshold()}};
  root["sender"] = {{"g", s.system.sender.g()},
                    {"gamma", s.system.sender.gamma()}};
  if (s.system.red) {
    const auto& red = *s.system.red;
    root["marking"] = {{"kind", "red"},
                       {"red",
                        {{"weight", red.weight()},
                         {"q_min_packets", red.q_min()},
                         {"q_max_packets", red.q_max()},
                         {"p_max", red.p_max()}}}};
  } else {
    root["marking"] = {{"kind", "threshold"}};
  }
  root["initial"] = {{"window_packets", s.system.initial.window},
                     {"alpha", s.system.initial.alpha}};
  root["run"] = {{"transient", s.run.transient}, {"samples", s.run.samples}};
  if (s.sweep) {
    root["sweep"] = {
        {"parameter", std::string(analysis::to_string(s.sweep->parameter))},
        {"from", s.sweep->from},
        {"to", s.sweep->to},
        {"step", s.sweep->step},
        {"observable", std::string(analysis::to_string(s.sweep->observable))}};
  }
  return root.dump(2) + "\n";
}

}  // namespace d2map::io
