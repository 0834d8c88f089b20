// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/d2map.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <string>

#include "d2map/analysis.hpp"
#include "d2map/commands.hpp"
#include "d2map/core_map.hpp"
#include "d2map/error.hpp"
#include "d2map/scenario.hpp"

struct d2map_scenario {
  d2map::io::Scenario value;
};

namespace {

thread_local std::string g_last_error;

d2map_status to_status(d2map::ErrorKind kind) {
  switch (kind) {
    case d2map::ErrorKind::kInvalidArgument: return D2MAP_ERR_INVALID_ARGUMENT;
    case d2map::ErrorKind::kParse: return D2MAP_ERR_PARSE;
    case d2map::ErrorKind::kValidation: return D2MAP_ERR_VALIDATION;
    case d2map::ErrorKind::kIo: return D2MAP_ERR_IO;
    case d2map::ErrorKind::kMismatch: return D2MAP_ERR_MISMATCH;
  }
  return D2MAP_ERR_INTERNAL;
}

template <typename F>
d2map_status guarded(F&& body) {
  try {
    body();
    return D2MAP_OK;
  } catch (const d2map::Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return D2MAP_ERR_INTERNAL;
}

void require(const void* p, const char* name) {
  if (p == nullptr)
    d2map::fail(d2map::ErrorKind::kInvalidArgument,
                std::string(name) + " must not be NULL");
}

d2map::core::LinkParams link_of(const d2map_link* l) {
  require(l, "link");
  return {l->capacity_bps, l->prop_delay_s, l->packet_size_bits,
          l->buffer_packets, l->threshold_packets};
}

d2map::core::SenderParams sender_of(const d2map_sender* s) {
  require(s, "sender");
  return {s->g, s->gamma};
}

d2map_record record_of(const d2map::core::StepRecord& r) {
  return {r.k, r.window, r.alpha, r.queue, r.marked ? 1 : 0, r.rtt};
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* d2map_last_error(void) { return g_last_error.c_str(); }

const char* d2map_status_name(d2map_status status) {
  switch (status) {
    case D2MAP_OK: return "ok";
    case D2MAP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case D2MAP_ERR_PARSE: return "parse error";
    case D2MAP_ERR_VALIDATION: return "validation error";
    case D2MAP_ERR_IO: return "i/o error";
    case D2MAP_ERR_MISMATCH: return "scenario/command mismatch";
    case D2MAP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

d2map_status d2map_bandwidth_delay_product(const d2map_link* link,
                                           double* out) {
  return guarded([&] {
    require(out, "out");
    *out = d2map::core::bandwidth_delay_product(link_of(link));
  });
}

d2map_status d2map_border(const d2map_link* link, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = d2map::core::border(link_of(link));
  });
}

d2map_status d2map_queue_next(const d2map_link* link, double window,
                              double* out) {
  return guarded([&] {
    require(out, "out");
    *out = d2map::core::queue_next(window, link_of(link));
  });
}

d2map_status d2map_mark(const d2map_link* link, double queue, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = d2map::core::mark(queue, link_of(link)) ? 1 : 0;
  });
}

d2map_status d2map_step(const d2map_link* link, const d2map_sender* sender,
                        const d2map_state* state, d2map_state* next,
                        d2map_record* record) {
  return guarded([&] {
    require(state, "state");
    require(next, "next");
    const d2map::core::MapState s{state->window, state->alpha};
    d2map::core::validate(s);
    const auto r = d2map::core::step(s, link_of(link), sender_of(sender));
    *next = {r.next.window, r.next.alpha};
    if (record != nullptr) *record = record_of(r.record);
  });
}

d2map_status d2map_orbit(const d2map_link* link, const d2map_sender* sender,
                         const d2map_state* initial, size_t transient,
                         size_t samples, d2map_record* out) {
  return guarded([&] {
    require(initial, "initial");
    require(out, "out");
    const auto records = d2map::core::orbit({initial->window, initial->alpha},
                                            link_of(link), sender_of(sender),
                                            transient, samples);
    for (std::size_t i = 0; i < records.size(); ++i)
      out[i] = record_of(records[i]);
  });
}

d2map_status d2map_detect_period(const double* series, size_t n,
                                 double tolerance, size_t max_period,
                                 size_t* period) {
  return guarded([&] {
    require(series, "series");
    require(period, "period");
    const auto r = d2map::analysis::detect_period(
        std::span<const double>(series, n), tolerance, max_period);
    *period = r.period.value_or(0);
  });
}

d2map_status d2map_scenario_load(const char* path, d2map_scenario** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new d2map_scenario{d2map::io::load_scenario(path)};
  });
}

d2map_status d2map_scenario_parse(const char* text, d2map_scenario** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new d2map_scenario{d2map::io::parse_scenario(text)};
  });
}

d2map_status d2map_scenario_serialize(const d2map_scenario* scenario,
                                      char** out_text) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out_text, "out_text");
    *out_text = dup_string(d2map::io::serialize_scenario(scenario->value));
  });
}

d2map_status d2map_scenario_system(const d2map_scenario* scenario,
                                   d2map_link* link, d2map_sender* sender,
                                   d2map_state* initial) {
  return guarded([&] {
    require(scenario, "scenario");
    const auto& sys = scenario->value.system;
    if (link != nullptr)
      *link = {sys.link.capacity(), sys.link.prop_delay(),
               sys.link.packet_size(), sys.link.buffer(),
               sys.link.threshold()};
    if (sender != nullptr) *sender = {sys.sender.g(), sys.sender.gamma()};
    if (initial != nullptr) *initial = {sys.initial.window, sys.initial.alpha};
  });
}

void d2map_scenario_free(d2map_scenario* scenario) { delete scenario; }

void d2map_string_free(char* text) { std::free(text); }

void d2map_command_options_init(d2map_command_options* options) {
  if (options == nullptr) return;
  const d2map::io::CommandOptions defaults;
  *options = {};
  options->svg = defaults.svg ? 1 : 0;
  options->tolerance = defaults.tolerance;
  options->max_period = defaults.max_period;
  options->observable = nullptr;
  options->order = defaults.order;
  options->log_grid = defaults.log_grid ? 1 : 0;
  options->threads = defaults.threads;
  options->resolution = defaults.resolution;
  options->iterations = defaults.iterations;
  options->separation = defaults.separation;
}

d2map_status d2map_run_command(const char* command,
                               const d2map_scenario* scenario,
                               const d2map_command_options* options,
                               const char* out_path, char** summary) {
  return guarded([&] {
    require(command, "command");
    require(scenario, "scenario");
    require(out_path, "out_path");
    d2map_command_options c;
    if (options != nullptr)
      c = *options;
    else
      d2map_command_options_init(&c);

    d2map::io::CommandOptions opt;
    opt.svg = c.svg != 0;
    opt.tolerance = c.tolerance;
    opt.max_period = c.max_period;
    if (c.observable != nullptr)
      opt.observable = d2map::analysis::parse_observable(c.observable);
    opt.order = c.order;
    opt.log_grid = c.log_grid != 0;
    opt.threads = c.threads;
    if (c.has_frozen) opt.frozen = c.frozen;
    if (c.has_domain) opt.domain = std::pair{c.domain_from, c.domain_to};
    opt.resolution = c.resolution;
    opt.iterations = c.iterations;
    opt.separation = c.separation;

    const std::string line =
        d2map::io::run_command(command, scenario->value, opt, out_path);
    if (summary != nullptr) *summary = dup_string(line);
  });
}

}  // extern "C"
