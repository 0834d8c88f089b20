// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "d2map/error.hpp"
#include "d2map/scenario.hpp"

using namespace d2map;
using namespace d2map::io;

#ifndef D2MAP_SCENARIO_DIR
#error "D2MAP_SCENARIO_DIR must be defined"
#endif

namespace {

const std::string kMinimal = R"({
  "link": { "capacity_bps": 1e10, "prop_delay_s": 1e-6, "packet_size_bits": 8192,
            "buffer_packets": 200, "threshold_packets": 20 },
  "sender": { "g": 0.0625, "gamma": 1 },
  "marking": { "kind": "threshold" }
})";

std::string replace(std::string text, const std::string& from,
                    const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "test.json");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults") {
  const auto s = parse_scenario(kMinimal);
  CHECK(s.system.initial == core::MapState{1.0, 0.0});
  CHECK(s.run.transient == 5000);
  CHECK(s.run.samples == 1000);
  CHECK_FALSE(s.sweep);
  CHECK_FALSE(s.system.red);
}

TEST_CASE("fig5 scenario") {
  const auto s = load_scenario(std::string(D2MAP_SCENARIO_DIR) + "/fig5.json");
  CHECK(s.system.link.capacity() == 1e10);
  CHECK(s.system.link.prop_delay() == 1e-9);
  CHECK(s.system.link.packet_size() == 8192);
  CHECK(s.system.link.buffer() == 200);
  CHECK(s.system.link.threshold() == 20);
  CHECK(s.system.sender.gamma() == 1);
  REQUIRE(s.sweep);
  CHECK(s.sweep->parameter == analysis::Parameter::kG);
  CHECK(s.sweep->from == 0.001);
  CHECK(s.sweep->to == 0.1);
  CHECK(s.sweep->step == 1e-4);
  CHECK(s.sweep->transient == 5000);
}

TEST_CASE("every shipped scenario loads") {
  for (const char* name : {"fig2-4", "fig5", "fig6", "fig7", "fig8", "fig9",
                           "case1", "case2"}) {
    CAPTURE(name);
    CHECK_NOTHROW(
        load_scenario(std::string(D2MAP_SCENARIO_DIR) + "/" + name + ".json"));
  }
}

TEST_CASE("validation errors") {
  CHECK(error_of(replace(kMinimal, "\"g\": 0.0625", "\"g\": 1.5")) ==
        "test.json: g must be in (0, 1)");
  CHECK(error_of(replace(kMinimal, "\"threshold_packets\": 20",
                         "\"threshold_packets\": 250")) ==
        "test.json: threshold_packets must be < buffer_packets");
  CHECK(error_of(replace(kMinimal, "\"gamma\": 1", "\"gamma\": 1, \"m\": 2")) ==
        "test.json: sender.m: unknown key");
  CHECK(error_of(replace(kMinimal, "\"gamma\": 1", "\"gamma\": \"one\"")) ==
        "test.json: sender.gamma: expected a number");
  CHECK(error_of(replace(kMinimal, "\"threshold\"", "\"codel\"")) ==
        "test.json: marking.kind: expected \"threshold\" or \"red\"");
  CHECK(error_of(replace(kMinimal, "\"gamma\": 1 },", "\"gamma\": 1 }, \"x\": 1,")) ==
        "test.json: x: unknown key");
  CHECK(error_of(R"({"link": {}, "sender": {}, "marking": {}})") ==
        "test.json: link.capacity_bps: missing required key");
  CHECK(error_of(replace(kMinimal, "\"kind\": \"threshold\"",
                         "\"kind\": \"red\"")) ==
        "test.json: red: missing section");
}

TEST_CASE("parse errors carry line context") {
  const std::string broken = "{\n  \"link\": {\n    \"capacity_bps\": ,\n";
  try {
    parse_scenario(broken, "broken.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    CHECK(std::string(e.what()).find("broken.json: parse error at line 3") == 0);
  }
}

TEST_CASE("sweep errors") {
  const auto with_sweep = [](const std::string& sweep) {
    return replace(kMinimal, "\"marking\": { \"kind\": \"threshold\" }",
                   "\"marking\": { \"kind\": \"threshold\" }, \"sweep\": " + sweep);
  };
  CHECK(error_of(with_sweep(R"({"parameter": "C", "from": 0, "to": 1, "step": 0.1, "observable": "queue"})"))
            .find("unknown sweep parameter 'C'") != std::string::npos);
  CHECK(error_of(with_sweep(R"({"parameter": "g", "from": 1, "to": 0, "step": 0.1, "observable": "queue"})")) ==
        "test.json: sweep.from must be < sweep.to");
  CHECK(error_of(with_sweep(R"({"parameter": "g", "from": 0.1, "to": 0.2, "observable": "queue"})")) ==
        "test.json: sweep.step: missing required key");
}

TEST_CASE("red marking") {
  const auto text = replace(
      kMinimal, "\"kind\": \"threshold\"",
      R"("kind": "red", "red": {"weight": 0.002, "q_min_packets": 5, "q_max_packets": 15, "p_max": 0.1})");
  const auto s = parse_scenario(text);
  REQUIRE(s.system.red);
  CHECK(s.system.red->q_max() == 15);
  CHECK(error_of(replace(text, "\"p_max\": 0.1", "\"p_max\": 0")) ==
        "test.json: red.p_max must be in (0, 1]");
}

TEST_CASE("counts must be non-negative integers") {
  const auto base = replace(kMinimal, "\"marking\": { \"kind\": \"threshold\" }",
                            "\"marking\": { \"kind\": \"threshold\" }, \"run\": "
                            "{\"transient\": TR, \"samples\": 10}");
  CHECK(error_of(replace(base, "TR", "-1")) ==
        "test.json: run.transient: expected a non-negative integer");
  CHECK(error_of(replace(base, "TR", "1.5")) ==
        "test.json: run.transient: expected a non-negative integer");
  CHECK(error_of(replace(base, "TR", "0")).empty());
}

TEST_CASE("serialize round trip") {
  for (const char* name : {"fig2-4", "fig5", "fig7", "fig9", "case1"}) {
    CAPTURE(name);
    const auto a =
        load_scenario(std::string(D2MAP_SCENARIO_DIR) + "/" + name + ".json");
    const auto text = serialize_scenario(a);
    const auto b = parse_scenario(text);
    CHECK(a == b);
    CHECK(serialize_scenario(b) == text);
  }
  const auto red = parse_scenario(replace(
      kMinimal, "\"kind\": \"threshold\"",
      R"("kind": "red", "red": {"weight": 0.3, "q_min_packets": 5, "q_max_packets": 15, "p_max": 0.1})"));
  CHECK(parse_scenario(serialize_scenario(red)) == red);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), Error);
}
