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
#include "starsim/beamform.hpp"

#include "starsim/error.hpp"
#include "starsim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace starsim::beamform
{

using std::numbers::pi;

namespace
{

constexpr double deg = pi / 180.0;

std::vector<int> target_codes(const PhaseConfiguration &c, Side side)
{
    return c.codes(side);
}

} // namespace

PhaseConfiguration PhaseConfiguration::zeros(std::size_t n, int bits)
{
    element::codebook_size(bits);
    return {std::vector<int>(n, 0), std::vector<int>(n, 0), bits};
}

void PhaseConfiguration::validate(std::size_t n) const
{
    const int size = element::codebook_size(bits);
    if (codes_t.size() != n || codes_r.size() != n)
        fail(ErrorCode::configuration, "phase configuration holds " + std::to_string(codes_t.size()) + "/" +
                                           std::to_string(codes_r.size()) + " codes for " + std::to_string(n) +
                                           " elements");
    for (auto *v : {&codes_t, &codes_r})
        for (int c : *v)
            if (c < 0 || c >= size)
                fail(ErrorCode::invalid_parameter, "phase code " + std::to_string(c) + " outside the " +
                                                       std::to_string(bits) + "-bit codebook");
}

std::vector<ElementState> apply(const PhaseConfiguration &config, std::span<const ElementState> states)
{
    config.validate(states.size());
    std::vector<ElementState> out(states.begin(), states.end());
    for (std::size_t n = 0; n < out.size(); ++n)
    {
        out[n].bits = config.bits;
        out[n].phase_code_t = config.codes_t[n];
        out[n].phase_code_r = config.codes_r[n];
    }
    return out;
}

PhaseConfiguration configuration_of(std::span<const ElementState> states)
{
    PhaseConfiguration c;
    c.bits = states.empty() ? 1 : states.front().bits;
    for (const auto &s : states)
    {
        if (s.bits != c.bits)
            fail(ErrorCode::configuration, "elements use different phase resolutions");
        c.codes_t.push_back(s.phase_code_t);
        c.codes_r.push_back(s.phase_code_r);
    }
    return c;
}

SteeringTarget SteeringTarget::toward(Side side, double zenith, double azimuth)
{
    if (!(zenith >= 0.0 && zenith < pi / 2))
        fail(ErrorCode::invalid_parameter, "steering zenith must lie in [0, 90) degrees off the face normal");
    return {side, zenith, azimuth, std::nullopt};
}

SteeringTarget SteeringTarget::at(const geometry::TerminalPosition &position)
{
    return {position.side(), 0.0, 0.0, position};
}

link::Terminal target_receiver(const Scenario &scenario, const SteeringTarget &target)
{
    const auto &rx = scenario.receiver(target.side);
    if (target.position)
        return {*target.position, rx.pattern};
    const double range = static_cast<double>(rx.position.spherical().range);
    return {geometry::TerminalPosition::on_face(target.side, range, target.zenith, target.azimuth), rx.pattern};
}

link::PathTerms target_terms(const Scenario &scenario, std::span<const ElementState> states,
                             const SteeringTarget &target)
{
    return link::path_terms(scenario, states, target.side, target_receiver(scenario, target));
}

std::vector<double> conjugate_phases(const Scenario &scenario, const SteeringTarget &target)
{
    const auto receiver = target_receiver(scenario, target);
    const auto lengths = link::path_lengths(scenario, receiver.position);
    const double lambda = scenario.wavelength();
    std::vector<double> out(lengths.size());
    for (std::size_t n = 0; n < lengths.size(); ++n)
        out[n] = channel::cycles_to_phase(lengths[n] / lambda);
    return out;
}

PhaseConfiguration quantized_conjugate(const Scenario &scenario, std::span<const ElementState> states,
                                       const SteeringTarget &target, int bits, const PhaseConfiguration *base)
{
    const std::size_t n = states.size();
    PhaseConfiguration config = base ? *base : PhaseConfiguration::zeros(n, bits);
    if (config.bits != bits)
        fail(ErrorCode::configuration, "base configuration resolution differs from the requested bits");
    config.validate(n);

    const auto ideal = conjugate_phases(scenario, target);
    const auto terms = target_terms(scenario, states, target);
    const auto table = link::PathTerms::phasors(bits);
    const int size = element::codebook_size(bits);
    const double step = 2.0 * pi / size;

    std::vector<int> best_codes;
    double best_power = -1.0;
    std::vector<int> codes(n);
    for (int offset = 0; offset < size; ++offset)
    {
        for (std::size_t i = 0; i < n; ++i)
            codes[i] = (element::quantize_phase(ideal[i] - offset * step, bits) + offset) % size;
        const double p = terms.power_codes(codes, table);
        if (p > best_power)
        {
            best_power = p;
            best_codes = codes;
        }
    }
    // Nearest-codebook rounding can split a tight phase cluster across a
    // decision boundary; never return less than the unsteered surface.
    const std::vector<int> uniform(n, 0);
    if (terms.power_codes(uniform, table) > best_power)
        best_codes = uniform;
    config.codes(target.side) = std::move(best_codes);
    return config;
}

GreedyResult greedy_optimize(const PowerObjective &objective, Side side, int bits,
                             const PhaseConfiguration &initial, int max_passes)
{
    if (max_passes < 1)
        fail(ErrorCode::invalid_parameter, "greedy search needs max_passes >= 1");
    if (initial.bits != bits)
        fail(ErrorCode::configuration, "initial configuration resolution differs from the requested bits");
    const int size = element::codebook_size(bits);

    GreedyResult result;
    result.configuration = initial;
    std::vector<int> codes = target_codes(initial, side);
    double current = objective(codes);
    result.initial_power = current;

    for (int pass = 1; pass <= max_passes; ++pass)
    {
        bool changed = false;
        for (std::size_t i = 0; i < codes.size(); ++i)
        {
            const int incumbent = codes[i];
            int best_code = incumbent;
            double best = current;
            for (int c = 0; c < size; ++c)
            {
                if (c == incumbent)
                    continue;
                codes[i] = c;
                const double p = objective(codes);
                if (p > best)
                {
                    best = p;
                    best_code = c;
                }
            }
            codes[i] = best_code;
            if (best_code != incumbent)
            {
                current = best;
                changed = true;
                ++result.accepted_steps;
                result.step_powers.push_back(current);
            }
        }
        result.passes = pass;
        if (!changed)
            break;
    }
    result.configuration.codes(side) = std::move(codes);
    result.power = current;
    return result;
}

GreedyResult greedy_optimize(const Scenario &scenario, std::span<const ElementState> states,
                             const SteeringTarget &target, int bits, const PhaseConfiguration &initial,
                             int max_passes)
{
    initial.validate(states.size());
    const auto terms = target_terms(scenario, states, target);
    const auto table = link::PathTerms::phasors(bits);
    const PowerObjective objective = [&](std::span<const int> codes)
    { return terms.power_codes(codes, table); };
    return greedy_optimize(objective, target.side, bits, initial, max_passes);
}

ExhaustiveResult exhaustive_search(const Scenario &scenario, std::span<const ElementState> states,
                                   const SteeringTarget &target, int bits, const PhaseConfiguration *base,
                                   int budget_bits)
{
    const std::size_t n = states.size();
    const int size = element::codebook_size(bits);
    const std::size_t total_bits = n * static_cast<std::size_t>(bits);
    if (budget_bits < 0 || budget_bits > 62)
        fail(ErrorCode::invalid_parameter, "exhaustive budget must lie in 0..62 bits");
    if (total_bits > static_cast<std::size_t>(budget_bits))
        fail(ErrorCode::budget_exceeded, "exhaustive search over " + std::to_string(n) + " elements x " +
                                             std::to_string(bits) + " bits = " + std::to_string(total_bits) +
                                             " bits exceeds the budget of " + std::to_string(budget_bits) +
                                             " bits");

    PhaseConfiguration config = base ? *base : PhaseConfiguration::zeros(n, bits);
    if (config.bits != bits)
        fail(ErrorCode::configuration, "base configuration resolution differs from the requested bits");
    config.validate(n);

    const auto terms = target_terms(scenario, states, target);
    const auto table = link::PathTerms::phasors(bits);
    const std::uint64_t count = std::uint64_t{1} << total_bits;
    const std::uint64_t mask = static_cast<std::uint64_t>(size - 1);

    // Fixed chunking independent of the worker count; chunks reduce in order.
    const std::uint64_t chunks = std::min<std::uint64_t>(count, 256);
    struct Best
    {
        double power = -1.0;
        std::uint64_t index = 0;
    };
    std::vector<Best> partial(chunks);
    parallel_for(chunks, [&](std::size_t k)
                 {
        const std::uint64_t begin = count * k / chunks;
        const std::uint64_t end = count * (k + 1) / chunks;
        std::vector<int> codes(n);
        Best best;
        for (std::uint64_t idx = begin; idx < end; ++idx)
        {
            // Element 0 is the most significant digit: ascending index is
            // lexicographic code order.
            for (std::size_t i = 0; i < n; ++i)
                codes[i] = static_cast<int>((idx >> (bits * (n - 1 - i))) & mask);
            const double p = terms.power_codes(codes, table);
            if (p > best.power)
                best = {p, idx};
        }
        partial[k] = best; });

    Best best;
    for (const auto &b : partial)
        if (b.power > best.power)
            best = b;

    std::vector<int> codes(n);
    for (std::size_t i = 0; i < n; ++i)
        codes[i] = static_cast<int>((best.index >> (bits * (n - 1 - i))) & mask);
    config.codes(target.side) = std::move(codes);
    return {std::move(config), best.power, count};
}

std::vector<PatternSample> pattern_sweep(const Scenario &scenario, std::span<const ElementState> states,
                                         std::span<const double> phases, Side side,
                                         std::span<const double> zenith_grid_deg, double azimuth_deg)
{
    if (zenith_grid_deg.empty())
        fail(ErrorCode::invalid_parameter, "pattern sweep needs a nonempty zenith grid");
    for (double z : zenith_grid_deg)
        if (!(std::abs(z) < 90.0))
            fail(ErrorCode::invalid_parameter, "pattern zenith " + std::to_string(z) +
                                                   " deg is not strictly inside (-90, 90)");
    if (!std::isfinite(azimuth_deg))
        fail(ErrorCode::invalid_parameter, "pattern azimuth must be finite");
    if (phases.size() != states.size())
        fail(ErrorCode::configuration, "phase count does not match element count");

    const auto &rx = scenario.receiver(side);
    const double range = static_cast<double>(rx.position.spherical().range);
    std::vector<PatternSample> out(zenith_grid_deg.size());
    parallel_for(out.size(), [&](std::size_t i)
                 {
        const double z = zenith_grid_deg[i];
        const double az = z < 0.0 ? azimuth_deg + 180.0 : azimuth_deg;
        const link::Terminal receiver{geometry::TerminalPosition::on_face(side, range, std::abs(z) * deg, az * deg),
                                      rx.pattern};
        out[i].zenith_deg = z;
        out[i].azimuth_deg = azimuth_deg;
        out[i].power_w = link::path_terms(scenario, states, side, receiver).power(phases); });

    double peak = 0.0;
    for (const auto &s : out)
        peak = std::max(peak, s.power_w);
    for (auto &s : out)
        s.power_db_rel = peak > 0.0 ? 10.0 * std::log10(s.power_w / peak) : 0.0;
    return out;
}

std::vector<PatternSample> pattern_sweep(const Scenario &scenario, std::span<const ElementState> states,
                                         Side side, std::span<const double> zenith_grid_deg, double azimuth_deg)
{
    const auto phases = link::applied_phases(states, side);
    return pattern_sweep(scenario, states, phases, side, zenith_grid_deg, azimuth_deg);
}

std::size_t peak_index(std::span<const PatternSample> samples)
{
    return peak_index(samples, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
}

std::size_t peak_index(std::span<const PatternSample> samples, double zenith_lo_deg, double zenith_hi_deg)
{
    std::size_t best = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        if (samples[i].zenith_deg < zenith_lo_deg || samples[i].zenith_deg > zenith_hi_deg)
            continue;
        if (best == samples.size() || samples[i].power_w > samples[best].power_w)
            best = i;
    }
    if (best == samples.size())
        fail(ErrorCode::invalid_parameter, "no pattern samples inside the requested window");
    return best;
}

std::optional<double> half_power_beamwidth(std::span<const PatternSample> samples)
{
    if (samples.empty())
        return std::nullopt;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].zenith_deg > samples[i - 1].zenith_deg))
            fail(ErrorCode::invalid_parameter, "beamwidth needs an ascending zenith grid");
    const std::size_t peak = peak_index(samples);
    const double ref = samples[peak].power_w;
    if (!(ref > 0.0))
        return std::nullopt;
    const auto rel = [&](std::size_t i)
    { return 10.0 * std::log10(samples[i].power_w / ref); };
    const auto crossing = [&](std::size_t inside, std::size_t outside)
    {
        const double a = rel(inside), b = rel(outside);
        const double t = (-3.0 - a) / (b - a);
        return samples[inside].zenith_deg + t * (samples[outside].zenith_deg - samples[inside].zenith_deg);
    };

    std::optional<double> left, right;
    for (std::size_t i = peak; i > 0; --i)
        if (rel(i - 1) <= -3.0)
        {
            left = crossing(i, i - 1);
            break;
        }
    for (std::size_t i = peak; i + 1 < samples.size(); ++i)
        if (rel(i + 1) <= -3.0)
        {
            right = crossing(i, i + 1);
            break;
        }
    if (!left || !right)
        return std::nullopt;
    return *right - *left;
}

std::vector<double> uniform_grid(double from_deg, double to_deg, double step_deg)
{
    if (!(step_deg > 0.0) || !(to_deg >= from_deg))
        fail(ErrorCode::invalid_parameter, "grid needs step > 0 and to >= from");
    const auto count = static_cast<std::size_t>(std::floor((to_deg - from_deg) / step_deg + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = from_deg + static_cast<double>(i) * step_deg;
    return out;
}

} // namespace starsim::beamform
