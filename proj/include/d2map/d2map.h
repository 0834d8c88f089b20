/* Copyright 2026 The d2map Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libd2map: the D2TCP / threshold-marking discrete map and its
 * analysis commands. Every call returns a d2map_status; on failure the message
 * is available from d2map_last_error() on the calling thread until the next
 * failing call. Objects returned through out-pointers are owned by the caller
 * and released with the matching *_free function.
 */
#ifndef D2MAP_D2MAP_H_
#define D2MAP_D2MAP_H_

#include <stddef.h>

#if defined(_WIN32)
#define D2MAP_API __declspec(dllexport)
#else
#define D2MAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum d2map_status {
  D2MAP_OK = 0,
  D2MAP_ERR_INVALID_ARGUMENT = 1,
  D2MAP_ERR_PARSE = 2,
  D2MAP_ERR_VALIDATION = 3,
  D2MAP_ERR_IO = 4,
  D2MAP_ERR_MISMATCH = 5,
  D2MAP_ERR_INTERNAL = 6
} d2map_status;

typedef struct d2map_scenario d2map_scenario;

typedef struct d2map_link {
  double capacity_bps;
  double prop_delay_s;
  double packet_size_bits;
  double buffer_packets;
  double threshold_packets;
} d2map_link;

typedef struct d2map_sender {
  double g;
  double gamma;
} d2map_sender;

typedef struct d2map_state {
  double window;
  double alpha;
} d2map_state;

typedef struct d2map_record {
  size_t k;
  double window;
  double alpha;
  double queue;
  int marked;
  double rtt_s;
} d2map_record;

D2MAP_API const char* d2map_last_error(void);
D2MAP_API const char* d2map_status_name(d2map_status status);

/* Map primitives. Link and sender parameters are validated on every call. */
D2MAP_API d2map_status d2map_bandwidth_delay_product(const d2map_link* link,
                                                     double* out);
D2MAP_API d2map_status d2map_border(const d2map_link* link, double* out);
D2MAP_API d2map_status d2map_queue_next(const d2map_link* link, double window,
                                        double* out);
D2MAP_API d2map_status d2map_mark(const d2map_link* link, double queue,
                                  int* out);
/* `record` may be NULL. */
D2MAP_API d2map_status d2map_step(const d2map_link* link,
                                  const d2map_sender* sender,
                                  const d2map_state* state, d2map_state* next,
                                  d2map_record* record);
/* Writes `samples` records to `out`. */
D2MAP_API d2map_status d2map_orbit(const d2map_link* link,
                                   const d2map_sender* sender,
                                   const d2map_state* initial, size_t transient,
                                   size_t samples, d2map_record* out);

/* *period is set to 0 when no period up to max_period fits. */
D2MAP_API d2map_status d2map_detect_period(const double* series, size_t n,
                                           double tolerance, size_t max_period,
                                           size_t* period);

/* Scenario documents. */
D2MAP_API d2map_status d2map_scenario_load(const char* path,
                                           d2map_scenario** out);
D2MAP_API d2map_status d2map_scenario_parse(const char* text,
                                            d2map_scenario** out);
D2MAP_API d2map_status d2map_scenario_serialize(const d2map_scenario* scenario,
                                                char** out_text);
D2MAP_API d2map_status d2map_scenario_system(const d2map_scenario* scenario,
                                             d2map_link* link,
                                             d2map_sender* sender,
                                             d2map_state* initial);
D2MAP_API void d2map_scenario_free(d2map_scenario* scenario);
D2MAP_API void d2map_string_free(char* text);

typedef struct d2map_command_options {
  int svg;
  double tolerance;
  size_t max_period;
  const char* observable; /* NULL: command default */
  size_t order;
  int log_grid;
  unsigned threads; /* 0: all cores */
  int has_frozen;
  double frozen;
  int has_domain;
  double domain_from;
  double domain_to;
  size_t resolution;
  size_t iterations;
  double separation;
} d2map_command_options;

D2MAP_API void d2map_command_options_init(d2map_command_options* options);

/* Commands: orbit, bifurcate, cobweb, return-map, map-graph, red-curve,
 * period, lyapunov. Writes CSV to out_path (and SVG beside it when
 * options->svg). `summary` may be NULL; otherwise it receives a one-line
 * summary to be released with d2map_string_free. */
D2MAP_API d2map_status d2map_run_command(const char* command,
                                         const d2map_scenario* scenario,
                                         const d2map_command_options* options,
                                         const char* out_path, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* D2MAP_D2MAP_H_ */
