// SPDX-License-Identifier: Apache-2.0
//
// starsim - simulator and beamforming optimizer for active STAR-RIS links
// Copyright (C) 2026 starsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
/* C interface to the starsim library. All functions return a status code;
 * on failure starsim_last_error() describes the problem (per thread). */
#ifndef STARSIM_H
#define STARSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(STARSIM_BUILDING)
#define STARSIM_API __attribute__((visibility("default")))
#else
#define STARSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum starsim_status
{
    STARSIM_OK = 0,
    STARSIM_E_INVALID_ARGUMENT = 1,
    STARSIM_E_PARSE = 2,
    STARSIM_E_IO = 3,
    STARSIM_E_DEGENERATE_GEOMETRY = 4,
    STARSIM_E_BUDGET_EXCEEDED = 5,
    STARSIM_E_CONFIGURATION = 6,
    STARSIM_E_BOUNDS = 7,
    STARSIM_E_BUFFER_TOO_SMALL = 8,
    STARSIM_E_INTERNAL = 9
} starsim_status;

typedef enum starsim_side
{
    STARSIM_SIDE_TRANSMIT = 0,
    STARSIM_SIDE_REFLECT = 1
} starsim_side;

typedef enum starsim_method
{
    STARSIM_METHOD_CONJUGATE = 0,
    STARSIM_METHOD_QUANTIZED = 1,
    STARSIM_METHOD_GREEDY = 2,
    STARSIM_METHOD_EXHAUSTIVE = 3
} starsim_method;

typedef enum starsim_sweep_param
{
    STARSIM_SWEEP_PA_MA = 0,
    STARSIM_SWEEP_BIAS_V = 1,
    STARSIM_SWEEP_ZENITH = 2
} starsim_sweep_param;

typedef enum starsim_format
{
    STARSIM_FORMAT_CSV = 0,
    STARSIM_FORMAT_JSON = 1
} starsim_format;

typedef struct starsim_scenario starsim_scenario;
typedef struct starsim_pattern starsim_pattern;
typedef struct starsim_report starsim_report;

STARSIM_API const char *starsim_version(void);
STARSIM_API const char *starsim_status_name(starsim_status status);
/* Message of the last failed call on this thread; "" if none. */
STARSIM_API const char *starsim_last_error(void);
/* Worker count for parallel operations (>= 1). Results do not depend on it. */
STARSIM_API starsim_status starsim_set_threads(unsigned threads);

/* Scenario files. */
STARSIM_API starsim_status starsim_scenario_load(const char *path, starsim_scenario **out);
STARSIM_API starsim_status starsim_scenario_parse(const char *text, const char *source_name,
                                                  starsim_scenario **out);
STARSIM_API void starsim_scenario_free(starsim_scenario *scenario);
STARSIM_API size_t starsim_scenario_element_count(const starsim_scenario *scenario);
STARSIM_API uint64_t starsim_scenario_seed(const starsim_scenario *scenario);

/* Copies a NUL-terminated string into buf. *needed (optional) receives the
 * size including the terminator; STARSIM_E_BUFFER_TOO_SMALL when cap is short. */
STARSIM_API starsim_status starsim_scenario_serialize(const starsim_scenario *scenario, char *buf, size_t cap,
                                                      size_t *needed);

typedef struct starsim_link_result
{
    double p_rt_w;
    double p_rr_w;
    double pl_t_db; /* +inf when nothing arrives */
    double pl_r_db;
    double pl_t_min_db;
    double pl_r_min_db;
    double snr_t_db;
    double snr_r_db;
    int split_clamped; /* a bias fell outside the calibrated range */
} starsim_link_result;

STARSIM_API starsim_status starsim_link_budget(const starsim_scenario *scenario, starsim_link_result *out);

typedef struct starsim_optimizer_settings
{
    starsim_method method;
    starsim_side side;
    int has_zenith; /* 0: aim at the scenario receiver on `side` */
    double zenith_deg;
    double azimuth_deg;
    int max_passes;
    int budget_bits;
} starsim_optimizer_settings;

/* Settings declared in the scenario file. */
STARSIM_API starsim_status starsim_optimizer_defaults(const starsim_scenario *scenario,
                                                      starsim_optimizer_settings *out);

typedef struct starsim_optimize_result
{
    double power_w;
    double bound_w; /* P_t / PL_min toward the same target */
    double ratio;
    double path_loss_db;
    double min_path_loss_db;
    int passes;
    uint64_t evaluated;
    int stored; /* codes written back into the scenario */
} starsim_optimize_result;

/* Discrete results are stored in the scenario as its phase configuration. */
STARSIM_API starsim_status starsim_optimize(starsim_scenario *scenario, const starsim_optimizer_settings *settings,
                                            starsim_optimize_result *out);

typedef struct starsim_pattern_settings
{
    starsim_side side;
    double from_deg;
    double to_deg;
    double step_deg;
    double azimuth_deg;
} starsim_pattern_settings;

typedef struct starsim_pattern_sample
{
    double zenith_deg;
    double azimuth_deg;
    double power_w;
    double power_db_rel;
} starsim_pattern_sample;

STARSIM_API starsim_status starsim_pattern_defaults(const starsim_scenario *scenario,
                                                    starsim_pattern_settings *out);
STARSIM_API starsim_status starsim_pattern_run(const starsim_scenario *scenario,
                                               const starsim_pattern_settings *settings, starsim_pattern **out);
STARSIM_API void starsim_pattern_free(starsim_pattern *pattern);
STARSIM_API size_t starsim_pattern_size(const starsim_pattern *pattern);
STARSIM_API starsim_status starsim_pattern_sample_at(const starsim_pattern *pattern, size_t index,
                                                     starsim_pattern_sample *out);
/* *defined is 0 when a -3 dB crossing falls outside the grid. */
STARSIM_API starsim_status starsim_pattern_beamwidth(const starsim_pattern *pattern, double *beamwidth_deg,
                                                     int *defined);
STARSIM_API starsim_status starsim_pattern_format(const starsim_pattern *pattern, starsim_format format, char *buf,
                                                  size_t cap, size_t *needed);
STARSIM_API starsim_status starsim_pattern_export(const starsim_pattern *pattern, const char *path,
                                                  starsim_format format);

typedef struct starsim_sweep_row
{
    double value;
    double power_w;
    double power_dbm;
    double bound_w;
} starsim_sweep_row;

/* rows must hold `steps` entries. */
STARSIM_API starsim_status starsim_sweep(const starsim_scenario *scenario, starsim_sweep_param param, double from,
                                         double to, int steps, const starsim_optimizer_settings *settings,
                                         starsim_sweep_row *rows);
STARSIM_API starsim_status starsim_sweep_format(const starsim_sweep_row *rows, size_t count, char *buf, size_t cap,
                                                size_t *needed);

/* Acceptance suite. calibration_source may be NULL (default calibration). */
STARSIM_API starsim_status starsim_validate(uint64_t seed, const starsim_scenario *calibration_source,
                                           starsim_report **out);
STARSIM_API void starsim_report_free(starsim_report *report);
STARSIM_API int starsim_report_passed(const starsim_report *report);
STARSIM_API starsim_status starsim_report_text(const starsim_report *report, char *buf, size_t cap,
                                               size_t *needed);
STARSIM_API starsim_status starsim_report_timings(const starsim_report *report, char *buf, size_t cap,
                                                  size_t *needed);

#ifdef __cplusplus
}
#endif

#endif
