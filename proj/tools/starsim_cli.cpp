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
// Command-line front end. Talks to the library through the C interface only.
#include "starsim/starsim.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

// Domain failure reported by the library.
struct Failure
{
    starsim_status status;
    std::string message;
};

void check(starsim_status st)
{
    if (st != STARSIM_OK)
        throw Failure{st, starsim_last_error()};
}

using ScenarioPtr = std::unique_ptr<starsim_scenario, decltype(&starsim_scenario_free)>;
using PatternPtr = std::unique_ptr<starsim_pattern, decltype(&starsim_pattern_free)>;
using ReportPtr = std::unique_ptr<starsim_report, decltype(&starsim_report_free)>;

ScenarioPtr load(const std::string &path)
{
    starsim_scenario *s = nullptr;
    check(starsim_scenario_load(path.c_str(), &s));
    return {s, starsim_scenario_free};
}

template <typename Fn>
std::string fetch(Fn &&fn)
{
    size_t needed = 0;
    fn(nullptr, 0, &needed);
    std::string buf(needed, '\0');
    check(fn(buf.data(), buf.size(), &needed));
    buf.resize(needed - 1);
    return buf;
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double dbm(double watts) { return watts > 0.0 ? 10.0 * std::log10(watts * 1e3) : -INFINITY; }

void write_text(const std::string &text, const std::string &path)
{
    if (path.empty() || path == "-")
    {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::FILE *f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw Failure{STARSIM_E_IO, "cannot open '" + path + "' for writing"};
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    if (std::fclose(f) != 0 || !ok)
        throw Failure{STARSIM_E_IO, "failed writing '" + path + "'"};
}

const std::map<std::string, starsim_side> side_names{{"transmit", STARSIM_SIDE_TRANSMIT},
                                                     {"reflect", STARSIM_SIDE_REFLECT}};
const std::map<std::string, starsim_method> method_names{{"conjugate", STARSIM_METHOD_CONJUGATE},
                                                         {"quantized", STARSIM_METHOD_QUANTIZED},
                                                         {"greedy", STARSIM_METHOD_GREEDY},
                                                         {"exhaustive", STARSIM_METHOD_EXHAUSTIVE}};
const std::map<std::string, starsim_sweep_param> param_names{
    {"pa_ma", STARSIM_SWEEP_PA_MA}, {"bias_v", STARSIM_SWEEP_BIAS_V}, {"zenith", STARSIM_SWEEP_ZENITH}};
const std::map<std::string, starsim_format> format_names{{"csv", STARSIM_FORMAT_CSV}, {"json", STARSIM_FORMAT_JSON}};

// Optimizer flags shared by optimize, sweep and pattern --optimize.
struct OptimizerFlags
{
    std::optional<starsim_method> method;
    std::optional<starsim_side> side;
    std::optional<double> zenith;
    std::optional<double> azimuth;
    std::optional<int> max_passes;
    std::optional<int> budget_bits;

    void add(CLI::App *app)
    {
        app->add_option("--method", method, "conjugate | quantized | greedy | exhaustive")
            ->transform(CLI::CheckedTransformer(method_names));
        app->add_option("--side", side, "transmit | reflect")->transform(CLI::CheckedTransformer(side_names));
        app->add_option("--zenith", zenith, "steering zenith off the face normal, deg")
            ->check(CLI::Range(0.0, 89.999999));
        app->add_option("--azimuth", azimuth, "steering azimuth, deg");
        app->add_option("--max-passes", max_passes, "greedy pass limit")->check(CLI::PositiveNumber);
        app->add_option("--budget-bits", budget_bits, "exhaustive search budget, bits")->check(CLI::Range(1, 62));
    }

    starsim_optimizer_settings resolve(const starsim_scenario *s) const
    {
        starsim_optimizer_settings o{};
        check(starsim_optimizer_defaults(s, &o));
        if (method)
            o.method = *method;
        if (side)
            o.side = *side;
        if (zenith)
        {
            o.has_zenith = 1;
            o.zenith_deg = *zenith;
        }
        if (azimuth)
            o.azimuth_deg = *azimuth;
        if (max_passes)
            o.max_passes = *max_passes;
        if (budget_bits)
            o.budget_bits = *budget_bits;
        return o;
    }
};

int run_linkbudget(const std::string &path)
{
    const auto s = load(path);
    starsim_link_result r{};
    check(starsim_link_budget(s.get(), &r));
    std::string out;
    out += "p_rt_w: " + num(r.p_rt_w) + "\n";
    out += "p_rt_dbm: " + num(dbm(r.p_rt_w)) + "\n";
    out += "p_rr_w: " + num(r.p_rr_w) + "\n";
    out += "p_rr_dbm: " + num(dbm(r.p_rr_w)) + "\n";
    out += "path_loss_t_db: " + num(r.pl_t_db) + "\n";
    out += "path_loss_r_db: " + num(r.pl_r_db) + "\n";
    out += "min_path_loss_t_db: " + num(r.pl_t_min_db) + "\n";
    out += "min_path_loss_r_db: " + num(r.pl_r_min_db) + "\n";
    out += "snr_t_db: " + num(r.snr_t_db) + "\n";
    out += "snr_r_db: " + num(r.snr_r_db) + "\n";
    write_text(out, "");
    if (r.split_clamped)
        std::fprintf(stderr, "starsim: warning: bias voltage outside the calibrated range was clamped\n");
    return exit_ok;
}

std::string optimize_summary(const starsim_optimizer_settings &o, const starsim_optimize_result &r)
{
    std::string method;
    for (const auto &[name, m] : method_names)
        if (m == o.method)
            method = name;
    std::string out;
    out += "method: " + method + "\n";
    out += "side: " + std::string(o.side == STARSIM_SIDE_TRANSMIT ? "transmit" : "reflect") + "\n";
    out += "power_w: " + num(r.power_w) + "\n";
    out += "power_dbm: " + num(dbm(r.power_w)) + "\n";
    out += "bound_w: " + num(r.bound_w) + "\n";
    out += "ratio_to_bound: " + num(r.ratio) + "\n";
    out += "ratio_to_bound_db: " + num(r.ratio > 0.0 ? 10.0 * std::log10(r.ratio) : -INFINITY) + "\n";
    out += "path_loss_db: " + num(r.path_loss_db) + "\n";
    out += "min_path_loss_db: " + num(r.min_path_loss_db) + "\n";
    out += "passes: " + std::to_string(r.passes) + "\n";
    out += "evaluated: " + std::to_string(r.evaluated) + "\n";
    return out;
}

int run_optimize(const std::string &path, const OptimizerFlags &flags, const std::string &save)
{
    const auto s = load(path);
    const auto o = flags.resolve(s.get());
    starsim_optimize_result r{};
    check(starsim_optimize(s.get(), &o, &r));
    write_text(optimize_summary(o, r), "");
    if (!save.empty())
    {
        if (!r.stored)
            throw Failure{STARSIM_E_CONFIGURATION, "continuous conjugate phases cannot be stored as codes; "
                                                   "use --method quantized, greedy or exhaustive with --save"};
        write_text(fetch([&](char *b, size_t c, size_t *n)
                         { return starsim_scenario_serialize(s.get(), b, c, n); }),
                   save);
    }
    return exit_ok;
}

struct PatternFlags
{
    std::optional<starsim_side> side;
    std::optional<double> from, to, step, azimuth;
    starsim_format format = STARSIM_FORMAT_CSV;
    std::string output;
    bool optimize = false;
};

int run_pattern(const std::string &path, const PatternFlags &p, const OptimizerFlags &flags)
{
    const auto s = load(path);
    if (p.optimize)
    {
        const auto o = flags.resolve(s.get());
        starsim_optimize_result r{};
        check(starsim_optimize(s.get(), &o, &r));
        if (!r.stored)
            throw Failure{STARSIM_E_CONFIGURATION, "pattern --optimize needs a discrete method"};
    }
    starsim_pattern_settings ps{};
    check(starsim_pattern_defaults(s.get(), &ps));
    if (p.side)
        ps.side = *p.side;
    if (p.from)
        ps.from_deg = *p.from;
    if (p.to)
        ps.to_deg = *p.to;
    if (p.step)
        ps.step_deg = *p.step;
    if (p.azimuth)
        ps.azimuth_deg = *p.azimuth;

    starsim_pattern *raw = nullptr;
    check(starsim_pattern_run(s.get(), &ps, &raw));
    const PatternPtr pattern(raw, starsim_pattern_free);

    if (p.output.empty() || p.output == "-")
    {
        write_text(fetch([&](char *b, size_t c, size_t *n)
                         { return starsim_pattern_format(pattern.get(), p.format, b, c, n); }),
                   "");
        return exit_ok;
    }
    check(starsim_pattern_export(pattern.get(), p.output.c_str(), p.format));
    double bw = 0.0;
    int defined = 0;
    check(starsim_pattern_beamwidth(pattern.get(), &bw, &defined));
    std::string out = "samples: " + std::to_string(starsim_pattern_size(pattern.get())) + "\n";
    out += "beamwidth_3db_deg: " + (defined ? num(bw) : std::string("undefined")) + "\n";
    write_text(out, "");
    return exit_ok;
}

int run_sweep(const std::string &path, starsim_sweep_param param, double from, double to, int steps,
              const OptimizerFlags &flags, const std::string &output)
{
    const auto s = load(path);
    const auto o = flags.resolve(s.get());
    std::vector<starsim_sweep_row> rows(static_cast<std::size_t>(steps));
    check(starsim_sweep(s.get(), param, from, to, steps, &o, rows.data()));
    write_text(fetch([&](char *b, size_t c, size_t *n)
                     { return starsim_sweep_format(rows.data(), rows.size(), b, c, n); }),
               output);
    return exit_ok;
}

int run_validate(const std::string &path, std::optional<std::uint64_t> seed, bool timings,
                 const std::string &output)
{
    ScenarioPtr s(nullptr, starsim_scenario_free);
    if (!path.empty())
        s = load(path);
    const std::uint64_t used = seed ? *seed : (s ? starsim_scenario_seed(s.get()) : 1);
    starsim_report *raw = nullptr;
    check(starsim_validate(used, s.get(), &raw));
    const ReportPtr report(raw, starsim_report_free);
    write_text(fetch([&](char *b, size_t c, size_t *n)
                     { return starsim_report_text(report.get(), b, c, n); }),
               output);
    if (timings)
    {
        const auto t = fetch([&](char *b, size_t c, size_t *n)
                             { return starsim_report_timings(report.get(), b, c, n); });
        std::fputs(t.c_str(), stderr);
    }
    if (!starsim_report_passed(report.get()))
    {
        std::fprintf(stderr, "starsim: error: validate: one or more acceptance criteria failed\n");
        return exit_domain;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"starsim: active STAR-RIS link simulator and beamforming optimizer"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for parallel operations")
        ->check(CLI::Range(1u, 1024u));

    std::string scenario_path;

    auto *lb = app.add_subcommand("linkbudget", "received powers, path losses and SNRs");
    lb->add_option("scenario", scenario_path, "scenario file")->required();

    OptimizerFlags opt_flags;
    std::string save;
    auto *opt = app.add_subcommand("optimize", "run one optimizer and compare with the coherent bound");
    opt->add_option("scenario", scenario_path, "scenario file")->required();
    opt_flags.add(opt);
    opt->add_option("--save", save, "write the scenario with the optimized codes to this path");

    PatternFlags pat_flags;
    OptimizerFlags pat_opt;
    auto *pat = app.add_subcommand("pattern", "sweep the receiver along an arc and export the pattern");
    pat->add_option("scenario", scenario_path, "scenario file")->required();
    pat->add_option("--side", pat_flags.side, "transmit | reflect")->transform(CLI::CheckedTransformer(side_names));
    pat->add_option("--from", pat_flags.from, "first signed zenith, deg")->check(CLI::Range(-89.999999, 89.999999));
    pat->add_option("--to", pat_flags.to, "last signed zenith, deg")->check(CLI::Range(-89.999999, 89.999999));
    pat->add_option("--step", pat_flags.step, "grid step, deg")->check(CLI::PositiveNumber);
    pat->add_option("--azimuth", pat_flags.azimuth, "cut azimuth, deg");
    pat->add_option("--format", pat_flags.format, "csv | json")->transform(CLI::CheckedTransformer(format_names));
    pat->add_option("-o,--output", pat_flags.output, "export path (default: standard output)");
    pat->add_flag("--optimize", pat_flags.optimize, "optimize phases first with the file's optimizer settings");
    pat->add_option("--method", pat_opt.method, "optimizer used with --optimize")
        ->transform(CLI::CheckedTransformer(method_names));

    OptimizerFlags sweep_flags;
    starsim_sweep_param param = STARSIM_SWEEP_PA_MA;
    double from = 0.0, to = 0.0;
    int steps = 0;
    std::string sweep_out;
    auto *sw = app.add_subcommand("sweep", "vary one parameter over a grid, re-optimizing at each point");
    sw->add_option("scenario", scenario_path, "scenario file")->required();
    sw->add_option("--param", param, "pa_ma | bias_v | zenith")
        ->required()
        ->transform(CLI::CheckedTransformer(param_names));
    sw->add_option("--from", from, "first value")->required();
    sw->add_option("--to", to, "last value")->required();
    sw->add_option("--steps", steps, "number of grid points")->required()->check(CLI::Range(1, 1000000));
    sw->add_option("-o,--output", sweep_out, "CSV path (default: standard output)");
    sweep_flags.add(sw);

    std::optional<std::uint64_t> seed;
    bool timings = false;
    std::string report_out;
    auto *val = app.add_subcommand("validate", "run the acceptance suite");
    val->add_option("scenario", scenario_path, "scenario supplying seed and calibration (optional)");
    val->add_option("--seed", seed, "random seed (default: the scenario's, else 1)");
    val->add_flag("--timings", timings, "print per-criterion runtimes to standard error");
    val->add_option("-o,--output", report_out, "report path (default: standard output)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::fprintf(stderr, "starsim: usage error: %s\n", e.what());
        std::fprintf(stderr, "run 'starsim --help' for usage\n");
        return exit_usage;
    }

    try
    {
        check(starsim_set_threads(threads));
        if (*lb)
            return run_linkbudget(scenario_path);
        if (*opt)
            return run_optimize(scenario_path, opt_flags, save);
        if (*pat)
            return run_pattern(scenario_path, pat_flags, pat_opt);
        if (*sw)
            return run_sweep(scenario_path, param, from, to, steps, sweep_flags, sweep_out);
        if (*val)
            return run_validate(scenario_path, seed, timings, report_out);
    }
    catch (const Failure &f)
    {
        std::fprintf(stderr, "starsim: error: %s: %s\n", starsim_status_name(f.status), f.message.c_str());
        return exit_domain;
    }
    return exit_usage;
}
