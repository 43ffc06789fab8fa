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
#include "starsim/starsim.h"

#include "starsim/acceptance.hpp"
#include "starsim/error.hpp"
#include "starsim/parallel.hpp"
#include "starsim/runner.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct starsim_scenario
{
    starsim::io::ScenarioFile file;
};

struct starsim_pattern
{
    std::vector<starsim::beamform::PatternSample> samples;
};

struct starsim_report
{
    starsim::acceptance::Report report;
};

namespace
{

using namespace starsim;

thread_local std::string last_error;

starsim_status status_of(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::invalid_parameter:
        return STARSIM_E_INVALID_ARGUMENT;
    case ErrorCode::parse:
        return STARSIM_E_PARSE;
    case ErrorCode::io:
        return STARSIM_E_IO;
    case ErrorCode::degenerate_geometry:
        return STARSIM_E_DEGENERATE_GEOMETRY;
    case ErrorCode::budget_exceeded:
        return STARSIM_E_BUDGET_EXCEEDED;
    case ErrorCode::configuration:
        return STARSIM_E_CONFIGURATION;
    case ErrorCode::bounds:
        return STARSIM_E_BOUNDS;
    }
    return STARSIM_E_INTERNAL;
}

starsim_status set_error(starsim_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

template <typename Fn>
starsim_status guarded(Fn &&fn)
{
    try
    {
        last_error.clear();
        fn();
        return STARSIM_OK;
    }
    catch (const Error &e)
    {
        return set_error(status_of(e.code()), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return set_error(STARSIM_E_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return set_error(STARSIM_E_INTERNAL, e.what());
    }
}

starsim_status copy_out(const std::string &text, char *buf, size_t cap, size_t *needed)
{
    if (needed)
        *needed = text.size() + 1;
    if (!buf || cap < text.size() + 1)
        return set_error(STARSIM_E_BUFFER_TOO_SMALL,
                         "buffer of " + std::to_string(cap) + " bytes, need " + std::to_string(text.size() + 1));
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return STARSIM_OK;
}

#define STARSIM_REQUIRE(ptr)                                                                    \
    do                                                                                          \
    {                                                                                           \
        if (!(ptr))                                                                             \
            return set_error(STARSIM_E_INVALID_ARGUMENT, "argument '" #ptr "' must not be NULL"); \
    } while (0)

geometry::Side side_of(starsim_side s) { return s == STARSIM_SIDE_REFLECT ? geometry::Side::reflect : geometry::Side::transmit; }
starsim_side c_side(geometry::Side s) { return s == geometry::Side::reflect ? STARSIM_SIDE_REFLECT : STARSIM_SIDE_TRANSMIT; }

io::OptimizerSettings settings_of(const starsim_optimizer_settings &c)
{
    io::OptimizerSettings s;
    switch (c.method)
    {
    case STARSIM_METHOD_CONJUGATE:
        s.method = io::Method::conjugate;
        break;
    case STARSIM_METHOD_QUANTIZED:
        s.method = io::Method::quantized;
        break;
    case STARSIM_METHOD_GREEDY:
        s.method = io::Method::greedy;
        break;
    case STARSIM_METHOD_EXHAUSTIVE:
        s.method = io::Method::exhaustive;
        break;
    default:
        fail(ErrorCode::invalid_parameter, "unknown optimizer method " + std::to_string(c.method));
    }
    if (c.side != STARSIM_SIDE_TRANSMIT && c.side != STARSIM_SIDE_REFLECT)
        fail(ErrorCode::invalid_parameter, "unknown side " + std::to_string(c.side));
    s.side = side_of(c.side);
    if (c.has_zenith)
    {
        if (!(c.zenith_deg >= 0.0 && c.zenith_deg < 90.0))
            fail(ErrorCode::invalid_parameter, "steering zenith must lie in [0, 90) degrees");
        s.zenith_deg = c.zenith_deg;
    }
    s.azimuth_deg = c.azimuth_deg;
    s.max_passes = c.max_passes;
    s.budget_bits = c.budget_bits;
    return s;
}

double db(double ratio)
{
    if (std::isinf(ratio))
        return std::numeric_limits<double>::infinity();
    return ratio > 0.0 ? 10.0 * std::log10(ratio) : -std::numeric_limits<double>::infinity();
}

io::ExportFormat format_of(starsim_format f)
{
    if (f == STARSIM_FORMAT_CSV)
        return io::ExportFormat::csv;
    if (f == STARSIM_FORMAT_JSON)
        return io::ExportFormat::json;
    fail(ErrorCode::invalid_parameter, "unknown export format " + std::to_string(f));
}

} // namespace

extern "C" {

const char *starsim_version(void) { return "0.1.0"; }

const char *starsim_status_name(starsim_status status)
{
    switch (status)
    {
    case STARSIM_OK:
        return "ok";
    case STARSIM_E_INVALID_ARGUMENT:
        return "invalid-argument";
    case STARSIM_E_PARSE:
        return "parse";
    case STARSIM_E_IO:
        return "io";
    case STARSIM_E_DEGENERATE_GEOMETRY:
        return "degenerate-geometry";
    case STARSIM_E_BUDGET_EXCEEDED:
        return "budget-exceeded";
    case STARSIM_E_CONFIGURATION:
        return "configuration";
    case STARSIM_E_BOUNDS:
        return "bounds";
    case STARSIM_E_BUFFER_TOO_SMALL:
        return "buffer-too-small";
    case STARSIM_E_INTERNAL:
        return "internal";
    }
    return "unknown";
}

const char *starsim_last_error(void) { return last_error.c_str(); }

starsim_status starsim_set_threads(unsigned threads)
{
    if (threads < 1)
        return set_error(STARSIM_E_INVALID_ARGUMENT, "thread count must be >= 1");
    set_thread_count(threads);
    return STARSIM_OK;
}

starsim_status starsim_scenario_load(const char *path, starsim_scenario **out)
{
    STARSIM_REQUIRE(path);
    STARSIM_REQUIRE(out);
    *out = nullptr;
    return guarded([&]
                   { *out = new starsim_scenario{io::parse_scenario(path)}; });
}

starsim_status starsim_scenario_parse(const char *text, const char *source_name, starsim_scenario **out)
{
    STARSIM_REQUIRE(text);
    STARSIM_REQUIRE(out);
    *out = nullptr;
    return guarded([&]
                   { *out = new starsim_scenario{io::parse_scenario_text(text, source_name ? source_name : "<string>")}; });
}

void starsim_scenario_free(starsim_scenario *scenario) { delete scenario; }

size_t starsim_scenario_element_count(const starsim_scenario *scenario)
{
    return scenario ? scenario->file.scenario.layout.size() : 0;
}

uint64_t starsim_scenario_seed(const starsim_scenario *scenario) { return scenario ? scenario->file.seed : 0; }

starsim_status starsim_scenario_serialize(const starsim_scenario *scenario, char *buf, size_t cap, size_t *needed)
{
    STARSIM_REQUIRE(scenario);
    std::string text;
    const auto st = guarded([&]
                            { text = io::serialize_scenario(scenario->file); });
    return st == STARSIM_OK ? copy_out(text, buf, cap, needed) : st;
}

starsim_status starsim_link_budget(const starsim_scenario *scenario, starsim_link_result *out)
{
    STARSIM_REQUIRE(scenario);
    STARSIM_REQUIRE(out);
    return guarded([&]
                   {
        const auto r = link::link_budget(scenario->file.scenario, scenario->file.states());
        out->p_rt_w = r.p_rt;
        out->p_rr_w = r.p_rr;
        out->pl_t_db = db(r.pl_t);
        out->pl_r_db = db(r.pl_r);
        out->pl_t_min_db = db(r.pl_t_min);
        out->pl_r_min_db = db(r.pl_r_min);
        out->snr_t_db = db(r.snr_t);
        out->snr_r_db = db(r.snr_r);
        out->split_clamped = r.split_clamped ? 1 : 0; });
}

starsim_status starsim_optimizer_defaults(const starsim_scenario *scenario, starsim_optimizer_settings *out)
{
    STARSIM_REQUIRE(scenario);
    STARSIM_REQUIRE(out);
    const auto &o = scenario->file.optimizer;
    out->method = static_cast<starsim_method>(static_cast<int>(o.method));
    out->side = c_side(o.side);
    out->has_zenith = o.zenith_deg ? 1 : 0;
    out->zenith_deg = o.zenith_deg.value_or(0.0);
    out->azimuth_deg = o.azimuth_deg;
    out->max_passes = o.max_passes;
    out->budget_bits = o.budget_bits;
    return STARSIM_OK;
}

starsim_status starsim_optimize(starsim_scenario *scenario, const starsim_optimizer_settings *settings,
                                starsim_optimize_result *out)
{
    STARSIM_REQUIRE(scenario);
    STARSIM_REQUIRE(settings);
    STARSIM_REQUIRE(out);
    return guarded([&]
                   {
        const auto r = run::optimize(scenario->file, settings_of(*settings));
        out->power_w = r.power_w;
        out->bound_w = r.bound_w;
        out->ratio = r.ratio();
        out->path_loss_db = r.path_loss_db;
        out->min_path_loss_db = r.min_path_loss_db;
        out->passes = r.passes;
        out->evaluated = r.evaluated;
        out->stored = 0;
        if (r.codes)
        {
            scenario->file.configuration = *r.codes;
            out->stored = 1;
        } });
}

starsim_status starsim_pattern_defaults(const starsim_scenario *scenario, starsim_pattern_settings *out)
{
    STARSIM_REQUIRE(scenario);
    STARSIM_REQUIRE(out);
    const auto &p = scenario->file.pattern;
    out->side = c_side(p.side);
    out->from_deg = p.from_deg;
    out->to_deg = p.to_deg;
    out->step_deg = p.step_deg;
    out->azimuth_deg = p.azimuth_deg;
    return STARSIM_OK;
}

starsim_status starsim_pattern_run(const starsim_scenario *scenario, const starsim_pattern_settings *settings,
                                   starsim_pattern **out)
{
    STARSIM_REQUIRE(scenario);
    STARSIM_REQUIRE(settings);
    STARSIM_REQUIRE(out);
    *out = nullptr;
    return guarded([&]
                   {
        if (settings->side != STARSIM_SIDE_TRANSMIT && settings->side != STARSIM_SIDE_REFLECT)
            fail(ErrorCode::invalid_parameter, "unknown side " + std::to_string(settings->side));
        const auto grid = beamform::uniform_grid(settings->from_deg, settings->to_deg, settings->step_deg);
        const auto states = scenario->file.states();
        auto samples = beamform::pattern_sweep(scenario->file.scenario, states, side_of(settings->side), grid,
                                               settings->azimuth_deg);
        *out = new starsim_pattern{std::move(samples)}; });
}

void starsim_pattern_free(starsim_pattern *pattern) { delete pattern; }

size_t starsim_pattern_size(const starsim_pattern *pattern) { return pattern ? pattern->samples.size() : 0; }

starsim_status starsim_pattern_sample_at(const starsim_pattern *pattern, size_t index, starsim_pattern_sample *out)
{
    STARSIM_REQUIRE(pattern);
    STARSIM_REQUIRE(out);
    if (index >= pattern->samples.size())
        return set_error(STARSIM_E_BOUNDS, "sample index " + std::to_string(index) + " out of range");
    const auto &s = pattern->samples[index];
    *out = {s.zenith_deg, s.azimuth_deg, s.power_w, s.power_db_rel};
    return STARSIM_OK;
}

starsim_status starsim_pattern_beamwidth(const starsim_pattern *pattern, double *beamwidth_deg, int *defined)
{
    STARSIM_REQUIRE(pattern);
    STARSIM_REQUIRE(beamwidth_deg);
    STARSIM_REQUIRE(defined);
    return guarded([&]
                   {
        const auto bw = beamform::half_power_beamwidth(pattern->samples);
        *defined = bw ? 1 : 0;
        *beamwidth_deg = bw.value_or(std::numeric_limits<double>::quiet_NaN()); });
}

starsim_status starsim_pattern_format(const starsim_pattern *pattern, starsim_format format, char *buf, size_t cap,
                                      size_t *needed)
{
    STARSIM_REQUIRE(pattern);
    std::string text;
    const auto st = guarded([&]
                            { text = io::format_pattern(pattern->samples, format_of(format)); });
    return st == STARSIM_OK ? copy_out(text, buf, cap, needed) : st;
}

starsim_status starsim_pattern_export(const starsim_pattern *pattern, const char *path, starsim_format format)
{
    STARSIM_REQUIRE(pattern);
    STARSIM_REQUIRE(path);
    return guarded([&]
                   { io::export_pattern(pattern->samples, path, format_of(format)); });
}

starsim_status starsim_sweep(const starsim_scenario *scenario, starsim_sweep_param param, double from, double to,
                             int steps, const starsim_optimizer_settings *settings, starsim_sweep_row *rows)
{
    STARSIM_REQUIRE(scenario);
    STARSIM_REQUIRE(settings);
    STARSIM_REQUIRE(rows);
    return guarded([&]
                   {
        run::SweepParam p;
        switch (param)
        {
        case STARSIM_SWEEP_PA_MA:
            p = run::SweepParam::pa_ma;
            break;
        case STARSIM_SWEEP_BIAS_V:
            p = run::SweepParam::bias_v;
            break;
        case STARSIM_SWEEP_ZENITH:
            p = run::SweepParam::zenith;
            break;
        default:
            fail(ErrorCode::invalid_parameter, "unknown sweep parameter " + std::to_string(param));
        }
        const auto result = run::sweep(scenario->file, p, from, to, steps, settings_of(*settings));
        for (std::size_t i = 0; i < result.size(); ++i)
        {
            const auto &r = result[i];
            rows[i] = {r.value, r.power_w,
                       r.power_w > 0.0 ? 10.0 * std::log10(r.power_w * 1e3) : -std::numeric_limits<double>::infinity(),
                       r.bound_w};
        } });
}

starsim_status starsim_sweep_format(const starsim_sweep_row *rows, size_t count, char *buf, size_t cap,
                                    size_t *needed)
{
    STARSIM_REQUIRE(rows);
    std::vector<run::SweepRow> r(count);
    for (size_t i = 0; i < count; ++i)
        r[i] = {rows[i].value, rows[i].power_w, rows[i].bound_w};
    std::string text;
    const auto st = guarded([&]
                            { text = run::format_sweep(r); });
    return st == STARSIM_OK ? copy_out(text, buf, cap, needed) : st;
}

starsim_status starsim_validate(uint64_t seed, const starsim_scenario *calibration_source, starsim_report **out)
{
    STARSIM_REQUIRE(out);
    *out = nullptr;
    return guarded([&]
                   {
        acceptance::Options o;
        o.seed = seed;
        if (calibration_source)
            o.calibration = calibration_source->file.scenario.calibration;
        *out = new starsim_report{acceptance::run(o)}; });
}

void starsim_report_free(starsim_report *report) { delete report; }

int starsim_report_passed(const starsim_report *report) { return report && report->report.all_passed() ? 1 : 0; }

starsim_status starsim_report_text(const starsim_report *report, char *buf, size_t cap, size_t *needed)
{
    STARSIM_REQUIRE(report);
    return copy_out(report->report.text(), buf, cap, needed);
}

starsim_status starsim_report_timings(const starsim_report *report, char *buf, size_t cap, size_t *needed)
{
    STARSIM_REQUIRE(report);
    return copy_out(report->report.timings(), buf, cap, needed);
}

} // extern "C"
