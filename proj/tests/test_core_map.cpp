// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "d2map/core_map.hpp"
#include "d2map/error.hpp"

using namespace d2map::core;

namespace {

LinkParams link_30us(double k = 15.0) { return {1e10, 30e-6, 8192, 200, k}; }

// Plain DCTCP update, written without the deadline exponent.
MapState dctcp_step(const MapState& s, const LinkParams& link, double g) {
  const double q = std::min(
      std::max(s.window - link.capacity() * link.prop_delay() / link.packet_size(),
               0.0),
      link.buffer());
  if (q > link.threshold())
    return {(1.0 - s.alpha / 2.0) * s.window, (1.0 - g) * s.alpha + g};
  return {s.window + 1.0, (1.0 - g) * s.alpha};
}

}  // namespace

TEST_CASE("bandwidth-delay product") {
  // 1e10 * 30e-6 / 8192, exact in binary.
  CHECK(bandwidth_delay_product(link_30us()) == 36.62109375);
  CHECK(bandwidth_delay_product({1e10, 0.0, 8192, 200, 20}) == 0.0);
  CHECK(bandwidth_delay_product({8192, 1.0, 8192, 200, 20}) == 1.0);
}

TEST_CASE("border") {
  CHECK(border(link_30us()) == 51.62109375);
  CHECK(border({1e10, 0.0, 8192, 200, 20}) == 20.0);
  CHECK(border({1e10, 1e-9, 8192, 200, 20}) ==
        doctest::Approx(20.001220703125).epsilon(1e-15));
}

TEST_CASE("queue_next clamps to [0, B]") {
  const auto link = link_30us();
  CHECK(queue_next(71.62, link) == doctest::Approx(35.0).epsilon(0.01 / 35));
  CHECK(queue_next(71.62, link) == doctest::Approx(34.99890625));
  CHECK(queue_next(bandwidth_delay_product(link), link) == 0.0);
  CHECK(queue_next(1.0, link) == 0.0);
  CHECK(queue_next(200 + bandwidth_delay_product(link) + 100, link) == 200.0);
}

TEST_CASE("mark is strict at the threshold") {
  const auto link = link_30us(20);
  CHECK_FALSE(mark(20.0, link));
  CHECK(mark(20.0 + 1e-9, link));
  CHECK_FALSE(mark(0.0, link));
}

TEST_CASE("parameter validation") {
  using d2map::Error;
  CHECK_THROWS_AS(LinkParams(0, 1e-6, 8192, 200, 20), Error);
  CHECK_THROWS_AS(LinkParams(1e10, -1, 8192, 200, 20), Error);
  CHECK_THROWS_AS(LinkParams(1e10, 1e-6, 0, 200, 20), Error);
  CHECK_THROWS_AS(LinkParams(1e10, 1e-6, 8192, 200, 250), Error);
  CHECK_THROWS_AS(LinkParams(1e10, 1e-6, 8192, 200, 200), Error);
  CHECK_THROWS_AS(LinkParams(1e10, 1e-6, 8192, 200, 0), Error);
  CHECK_THROWS_AS(SenderParams(1.5, 1), Error);
  CHECK_THROWS_AS(SenderParams(0, 1), Error);
  CHECK_THROWS_AS(SenderParams(0.1, 0), Error);
  CHECK_THROWS_AS(validate(MapState{0.0, 0.0}), Error);
  CHECK_THROWS_AS(validate(MapState{1.0, 1.1}), Error);
  CHECK_NOTHROW(validate(MapState{1.0, 1.0}));
  try {
    LinkParams(1e10, 1e-6, 8192, 200, 250);
  } catch (const Error& e) {
    CHECK(std::string(e.what()) ==
          "threshold_packets must be < buffer_packets");
    CHECK(e.kind() == d2map::ErrorKind::kValidation);
  }
}

TEST_CASE("step branches") {
  const auto link = link_30us();
  const SenderParams dctcp(1.0 / 16, 1.0);

  SUBCASE("alpha = 1 halves the window") {
    const auto r = step({100.0, 1.0}, link, dctcp);
    CHECK(r.record.marked);
    CHECK(r.next.window == 50.0);
    CHECK(r.next.alpha == 1.0);
  }
  SUBCASE("additive increase below the border") {
    const auto r = step({10.0, 0.0}, link, dctcp);
    CHECK_FALSE(r.record.marked);
    CHECK(r.next.window == 11.0);
    CHECK(r.next.alpha == 0.0);
  }
  SUBCASE("alpha from zero on a marked step") {
    const auto r = step({100.0, 0.0}, link, dctcp);
    CHECK(r.next.alpha == 0.0625);
    CHECK(r.next.window == 100.0);
  }
  SUBCASE("record carries the queue and RTT of the step") {
    const auto r = step({71.62, 0.5}, link, dctcp, 7);
    CHECK(r.record.k == 7);
    CHECK(r.record.window == 71.62);
    CHECK(r.record.alpha == 0.5);
    CHECK(r.record.queue == doctest::Approx(34.99890625));
    CHECK(r.record.rtt == doctest::Approx(30e-6 + 34.99890625 * 8192 / 1e10));
  }
  SUBCASE("simultaneous update uses the pre-step alpha") {
    const auto r = step({100.0, 0.5}, link, dctcp);
    CHECK(r.next.window == 75.0);
    CHECK(r.next.alpha == doctest::Approx(0.5 * 15 / 16 + 1.0 / 16));
  }
  SUBCASE("deadline exponent") {
    const auto r = step({100.0, 0.25}, link, SenderParams(0.1, 2.0));
    CHECK(r.next.window == doctest::Approx(100.0 * (1 - 0.0625 / 2)));
  }
}

TEST_CASE("orbit") {
  const auto link = link_30us();
  const SenderParams sender(1.0 / 16, 1.0);

  SUBCASE("single sample") {
    const auto recs = orbit({1.0, 0.0}, link, sender, 0, 1);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].window == 1.0);
    CHECK(recs[0].alpha == 0.0);
    CHECK(recs[0].queue == queue_next(1.0, link));
  }
  SUBCASE("transient then samples is the tail of one run") {
    const auto full = orbit({1.0, 0.0}, link, sender, 0, 700);
    const auto tail = orbit({1.0, 0.0}, link, sender, 500, 200);
    REQUIRE(tail.size() == 200);
    for (std::size_t i = 0; i < 200; ++i) CHECK(tail[i] == full[500 + i]);
  }
  SUBCASE("bounded") {
    for (const auto& r : orbit({1.0, 0.0}, link, sender, 5000, 1000)) {
      CHECK(r.queue >= 0.0);
      CHECK(r.queue <= 200.0);
      CHECK(r.alpha >= 0.0);
      CHECK(r.alpha <= 1.0);
    }
  }
  SUBCASE("zero samples rejected") {
    CHECK_THROWS_AS(orbit({1.0, 0.0}, link, sender, 0, 0), d2map::Error);
  }
}

TEST_CASE("properties over random parameters") {
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < 200; ++trial) {
    const double buffer = 50 + 300 * unit(rng);
    const LinkParams link(1e8 + 1e10 * unit(rng), 1e-4 * unit(rng),
                          1000 + 10000 * unit(rng), buffer,
                          1 + (buffer - 2) * unit(rng));
    const SenderParams sender(0.001 + 0.998 * unit(rng), 0.2 + 4 * unit(rng));
    MapState s{0.1 + 300 * unit(rng), unit(rng)};

    for (int i = 0; i < 500; ++i) {
      const auto r = step(s, link, sender);
      // border equivalence on the clamped queue
      CHECK(r.record.marked == (s.window > border(link)));
      if (r.record.marked)
        CHECK(r.next.window >= s.window / 2);
      else
        CHECK(r.next.window == s.window + 1.0);
      CHECK(r.record.rtt >= link.prop_delay());
      CHECK(r.next.alpha >= 0.0);
      CHECK(r.next.alpha <= 1.0);
      s = r.next;
    }
  }
}

TEST_CASE("gamma monotonicity of the decrease factor") {
  for (double a : {0.05, 0.3, 0.7, 0.95})
    for (double gamma = 0.25; gamma < 8; gamma *= 1.5)
      CHECK(decrease_factor(a, gamma * 1.5) > decrease_factor(a, gamma));
}

TEST_CASE("gamma = 1 reproduces plain DCTCP bit for bit") {
  const LinkParams link(1e10, 1e-4, 8192, 200, 20);
  const double g = 0.037;
  const SenderParams sender(g, 1.0);
  MapState a{1.0, 0.0}, b{1.0, 0.0};
  for (int i = 0; i < 1'000'000; ++i) {
    a = step(a, link, sender).next;
    b = dctcp_step(b, link, g);
    if (!(a == b)) {
      FAIL("diverged at iteration " << i);
      break;
    }
  }
  CHECK(a == b);
}

TEST_CASE("determinism") {
  const LinkParams link(1e10, 1e-4, 8192, 200, 20);
  const SenderParams sender(0.042, 1.3);
  CHECK(orbit({3.0, 0.2}, link, sender, 1000, 1000) ==
        orbit({3.0, 0.2}, link, sender, 1000, 1000));
}
