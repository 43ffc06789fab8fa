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
#include "starsim/runner.hpp"

#include "starsim/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace starsim::run
{

namespace
{

constexpr double deg = std::numbers::pi / 180.0;

double to_db(double ratio)
{
    return ratio > 0.0 && std::isfinite(ratio) ? 10.0 * std::log10(ratio) : std::numeric_limits<double>::infinity();
}

} // namespace

beamform::SteeringTarget steering_target(const ScenarioFile &file, const OptimizerSettings &settings)
{
    if (settings.zenith_deg)
        return beamform::SteeringTarget::toward(settings.side, *settings.zenith_deg * deg,
                                                settings.azimuth_deg * deg);
    return beamform::SteeringTarget::at(file.scenario.receiver(settings.side).position);
}

OptimizeReport optimize(const ScenarioFile &file, const OptimizerSettings &settings)
{
    const auto &scenario = file.scenario;
    scenario.validate();
    if (settings.max_passes < 1)
        fail(ErrorCode::invalid_parameter, "max_passes must be >= 1");

    const auto states = file.states();
    const auto target = steering_target(file, settings);
    const auto terms = beamform::target_terms(scenario, states, target);
    const auto base = beamform::configuration_of(states);
    const int bits = base.bits;
    const Side side = settings.side;

    OptimizeReport r;
    r.method = settings.method;
    r.side = side;
    r.bound_w = terms.coherent_power();

    // Applied phases for a code vector, including each element's phase error.
    const auto phases_of = [&](std::span<const int> codes)
    {
        std::vector<double> out(codes.size());
        for (std::size_t n = 0; n < codes.size(); ++n)
            out[n] = element::codebook_phase(codes[n], bits) + states[n].phase_error(side);
        return out;
    };

    switch (settings.method)
    {
    case io::Method::conjugate:
    {
        r.phases = beamform::conjugate_phases(scenario, target);
        for (std::size_t n = 0; n < r.phases.size(); ++n)
            r.phases[n] += states[n].phase_error(side);
        r.evaluated = 1;
        break;
    }
    case io::Method::quantized:
        r.codes = beamform::quantized_conjugate(scenario, states, target, bits, &base);
        r.evaluated = static_cast<std::uint64_t>(element::codebook_size(bits));
        break;
    case io::Method::greedy:
    {
        const auto initial = beamform::quantized_conjugate(scenario, states, target, bits, &base);
        const beamform::PowerObjective objective = [&](std::span<const int> codes)
        { return terms.power(phases_of(codes)); };
        const auto g = beamform::greedy_optimize(objective, side, bits, initial, settings.max_passes);
        r.codes = g.configuration;
        r.passes = g.passes;
        r.evaluated = static_cast<std::uint64_t>(g.passes) * states.size() *
                      static_cast<std::uint64_t>(element::codebook_size(bits));
        break;
    }
    case io::Method::exhaustive:
    {
        const auto e = beamform::exhaustive_search(scenario, states, target, bits, &base, settings.budget_bits);
        r.codes = e.configuration;
        r.evaluated = e.evaluated;
        break;
    }
    }

    if (r.codes)
        r.phases = phases_of(r.codes->codes(side));
    r.power_w = terms.power(r.phases);
    r.path_loss_db = to_db(scenario.tx_power_w / r.power_w);
    r.min_path_loss_db = to_db(scenario.tx_power_w / r.bound_w);
    return r;
}

const char *to_string(SweepParam param)
{
    switch (param)
    {
    case SweepParam::pa_ma:
        return "pa_ma";
    case SweepParam::bias_v:
        return "bias_v";
    case SweepParam::zenith:
        return "zenith";
    }
    return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name)
{
    for (SweepParam p : {SweepParam::pa_ma, SweepParam::bias_v, SweepParam::zenith})
        if (name == to_string(p))
            return p;
    return std::nullopt;
}

std::vector<SweepRow> sweep(const ScenarioFile &file, SweepParam param, double from, double to, int steps,
                            const OptimizerSettings &settings)
{
    if (steps < 1)
        fail(ErrorCode::invalid_parameter, "sweep needs at least one step");
    if (!std::isfinite(from) || !std::isfinite(to))
        fail(ErrorCode::invalid_parameter, "sweep bounds must be finite");

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
    {
        const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);
        ScenarioFile f = file;
        OptimizerSettings s = settings;
        switch (param)
        {
        case SweepParam::pa_ma:
            if (v < 0.0)
                fail(ErrorCode::invalid_parameter, "amplifier current must be >= 0 mA");
            f.element.pa_ma = v;
            break;
        case SweepParam::bias_v:
            f.element.bias_v = v;
            break;
        case SweepParam::zenith:
        {
            if (!(v >= 0.0 && v < 90.0))
                fail(ErrorCode::invalid_parameter, "swept zenith must lie in [0, 90) degrees");
            auto &rx = s.side == Side::transmit ? f.scenario.rx_t : f.scenario.rx_r;
            const double range = static_cast<double>(rx.position.spherical().range);
            rx.position = geometry::TerminalPosition::on_face(s.side, range, v * deg, s.azimuth_deg * deg);
            s.zenith_deg.reset();
            break;
        }
        }
        const auto report = optimize(f, s);
        rows.push_back({v, report.power_w, report.bound_w});
    }
    return rows;
}

std::string format_sweep(std::span<const SweepRow> rows)
{
    std::string out = "value,power_w,power_dbm,bound_w\n";
    for (const auto &r : rows)
    {
        const double dbm = r.power_w > 0.0 ? 10.0 * std::log10(r.power_w * 1e3)
                                           : -std::numeric_limits<double>::infinity();
        out += io::format_number(r.value) + "," + io::format_number(r.power_w) + "," + io::format_number(dbm) +
               "," + io::format_number(r.bound_w) + "\n";
    }
    return out;
}

} // namespace starsim::run
