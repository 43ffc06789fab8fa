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
#include "starsim/acceptance.hpp"

#include "oracle.hpp"
#include "starsim/beamform.hpp"
#include "starsim/error.hpp"
#include "starsim/link.hpp"
#include "starsim/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

namespace starsim::acceptance
{

namespace
{

using std::numbers::pi;
using beamform::PhaseConfiguration;
using beamform::SteeringTarget;
using element::ElementState;
using geometry::Side;
using geometry::TerminalPosition;
using link::Scenario;

constexpr double deg = pi / 180.0;

// Pinned tolerances.
constexpr double tol_coherent_gain = 1e-9;
constexpr double tol_path_loss = 1e-12;
constexpr double quant_lo = 0.355;
constexpr double quant_hi = 0.455;
constexpr double tol_dominance = 1e-12;
constexpr double greedy_fraction = 0.95;
constexpr double greedy_share = 0.99;
constexpr double beamwidth_lo = 12.0;
constexpr double beamwidth_hi = 18.0;
constexpr double scan_drop_lo = 1.0;
constexpr double scan_drop_hi = 4.0;
constexpr double min_split_range_db = 6.0;
constexpr double tol_oracle = 1e-10;

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class Rng
{
public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : engine_(mix(mix(seed) ^ mix(stream * 0x100000001b3ull + index))) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1p-53; }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

std::string fmt(const char *format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string g3(double v) { return fmt("%.3g", v); }

channel::AntennaPattern random_pattern(Rng &rng)
{
    if (rng.coin())
        return channel::AntennaPattern::isotropic();
    return channel::AntennaPattern::cosine_power_normalized(rng.uniform(0.0, 4.0));
}

// Random desk-scale scenario with at most max_n elements.
Scenario random_scenario(Rng &rng, int max_n)
{
    Scenario s;
    s.layout.n_rows = rng.integer(1, max_n);
    s.layout.n_cols = rng.integer(1, max_n / s.layout.n_rows);
    s.layout.pitch_x = rng.uniform(0.02, 0.1);
    s.layout.pitch_y = rng.uniform(0.02, 0.1);
    s.carrier_hz = rng.uniform(1e9, 6e9);
    s.tx_power_w = rng.uniform(0.01, 10.0);
    const auto place = [&](Side side)
    {
        return TerminalPosition::on_face(side, rng.uniform(0.5, 10.0), rng.uniform(0.0, 80.0) * deg,
                                         rng.uniform(0.0, 360.0) * deg);
    };
    s.tx = {place(Side::reflect), random_pattern(rng)};
    s.rx_t = {place(Side::transmit), random_pattern(rng)};
    s.rx_r = {place(Side::reflect), random_pattern(rng)};
    s.element_pattern = channel::AntennaPattern::cosine_power_normalized(rng.uniform(0.0, 3.0));
    return s;
}

std::vector<ElementState> random_states(Rng &rng, const Scenario &s, int bits, double jitter_deg)
{
    std::vector<ElementState> out(s.layout.size());
    const int size = element::codebook_size(bits);
    for (auto &st : out)
    {
        st.bits = bits;
        st.bias_v = rng.uniform(0.0, 28.0);
        st.pa_ma = rng.uniform(0.0, 20.0);
        st.efficiency = rng.uniform(0.3, 1.0);
        st.phase_code_t = rng.integer(0, size - 1);
        st.phase_code_r = rng.integer(0, size - 1);
        st.phase_error_t = rng.uniform(-jitter_deg, jitter_deg) * deg;
        st.phase_error_r = rng.uniform(-jitter_deg, jitter_deg) * deg;
    }
    return out;
}

// Reference array: 8 x 4 elements, 58 mm pitch, 2.6 GHz, terminals at
// 2 m. Rows run along y, so the 8-element cut lies at azimuth 90 deg.
Scenario prototype()
{
    Scenario s;
    s.layout = {8, 4, 0.058, 0.058};
    s.carrier_hz = 2.6e9;
    s.tx = {TerminalPosition::on_face(Side::reflect, 2.0, 0.0, 0.0), channel::AntennaPattern::isotropic()};
    s.rx_t = {TerminalPosition::on_face(Side::transmit, 2.0, 0.0, 0.0), channel::AntennaPattern::isotropic()};
    s.rx_r = {TerminalPosition::on_face(Side::reflect, 2.0, 30.0 * deg, 0.0), channel::AntennaPattern::isotropic()};
    return s;
}

constexpr double cut_azimuth_deg = 90.0;

struct Beam
{
    std::vector<beamform::PatternSample> samples;
    double peak_w = 0.0;
    double peak_deg = 0.0;
};

// 1-bit greedy beam (started from the quantized conjugate) swept on a 0.5 deg
// grid along the 8-element axis; peak taken within +-15 deg of the steer.
Beam prototype_beam(double steer_deg)
{
    const Scenario s = prototype();
    const auto states = link::uniform_states(s, ElementState{});
    const auto target = SteeringTarget::toward(Side::transmit, steer_deg * deg, cut_azimuth_deg * deg);
    const auto init = beamform::quantized_conjugate(s, states, target, 1);
    const auto g = beamform::greedy_optimize(s, states, target, 1, init, 100);
    const auto configured = beamform::apply(g.configuration, states);
    const auto grid = beamform::uniform_grid(-89.5, 89.5, 0.5);
    Beam b;
    b.samples = beamform::pattern_sweep(s, configured, Side::transmit, grid, cut_azimuth_deg);
    const auto k = beamform::peak_index(b.samples, steer_deg - 15.0, steer_deg + 15.0);
    b.peak_w = b.samples[k].power_w;
    b.peak_deg = b.samples[k].zenith_deg;
    return b;
}

double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---------------------------------------------------------------------------

Criterion coherent_gain(const Options &)
{
    Criterion c{1, "coherent-gain law N^2", false, {}, 0.0, 1.0};
    const std::pair<int, int> layouts[] = {{1, 1}, {2, 2}, {4, 4}, {8, 4}};
    double single = 0.0;
    double magnitude = 0.0;
    double worst = 0.0;
    std::string ratios;
    for (const auto &[rows, cols] : layouts)
    {
        Scenario s = prototype();
        s.layout.n_rows = rows;
        s.layout.n_cols = cols;
        const auto states = link::uniform_states(s, ElementState{});
        auto terms = link::path_terms(s, states, Side::transmit);
        if (magnitude == 0.0)
            magnitude = std::abs(terms.terms()[0]);
        for (auto &t : terms.mutable_terms())
            t = std::polar(magnitude, std::arg(t));
        const auto phases = beamform::conjugate_phases(s, SteeringTarget::at(s.rx_t.position));
        const double p = terms.power(phases);
        if (single == 0.0)
            single = p;
        const double n = static_cast<double>(s.layout.size());
        worst = std::max(worst, relative_error(p / single, n * n));
        ratios += (ratios.empty() ? "" : " ") + g3(p / single);
    }
    c.passed = worst < tol_coherent_gain;
    c.detail = "P(N)/P(1) for N=1,4,16,32: " + ratios + "; max rel err " + g3(worst) + " (tol " +
               g3(tol_coherent_gain) + ")";
    return c;
}

Criterion path_loss_identity(const Options &o)
{
    Criterion c{2, "path-loss identity under conjugate phases", false, {}, 0.0, 5.0};
    constexpr int count = 100;
    std::vector<double> err(count);
    parallel_for(count, [&](std::size_t i)
                 {
        Rng rng(o.seed, 2, i);
        const Scenario s = random_scenario(rng, 64);
        const auto states = random_states(rng, s, 1, 0.0);
        const Side side = i % 2 ? Side::reflect : Side::transmit;
        const auto phases = beamform::conjugate_phases(s, SteeringTarget::at(s.receiver(side).position));
        const double p = link::received_power(s, states, side, phases);
        err[i] = relative_error(s.tx_power_w / p, link::min_path_loss(s, states, side)); });
    const double worst = *std::max_element(err.begin(), err.end());
    c.passed = worst < tol_path_loss;
    c.detail = std::to_string(count) + " scenarios, max rel err " + g3(worst) + " (tol " + g3(tol_path_loss) + ")";
    return c;
}

Criterion energy_budget(const Options &o)
{
    Criterion c{3, "energy budget eta_t + eta_r = eta_n", false, {}, 0.0, 0.0};
    const auto &curves = o.calibration ? *o.calibration : element::CalibrationCurves::defaults();
    constexpr int count = 100000;
    Rng rng(o.seed, 3, 0);
    int violations = 0;
    for (int i = 0; i < count; ++i)
    {
        const double bias = rng.uniform(curves.min_bias() - 5.0, curves.max_bias() + 5.0);
        const double eff = 1.0 - rng.uniform(0.0, 1.0); // (0, 1]
        const auto split = element::split_coefficients(bias, eff, curves);
        if (split.transmit + split.reflect != eff || split.transmit < 0.0 || split.reflect < 0.0)
            ++violations;
    }
    c.passed = violations == 0;
    c.detail = std::to_string(count) + " random biases, " + std::to_string(violations) + " violations";
    return c;
}

Criterion quantization_loss(const Options &o)
{
    Criterion c{4, "1-bit quantization loss", false, {}, 0.0, 30.0};
    constexpr int trials = 10000;
    std::vector<double> ratio(trials);
    parallel_for(trials, [&](std::size_t i)
                 {
        Rng rng(o.seed, 4, i);
        Scenario s = prototype();
        s.tx.position = TerminalPosition::on_face(Side::reflect, rng.uniform(1.0, 10.0), rng.uniform(0.0, 60.0) * deg,
                                                  rng.uniform(0.0, 360.0) * deg);
        s.rx_t.position = TerminalPosition::on_face(Side::transmit, rng.uniform(1.0, 10.0),
                                                    rng.uniform(0.0, 60.0) * deg, rng.uniform(0.0, 360.0) * deg);
        const auto states = link::uniform_states(s, ElementState{});
        const auto target = SteeringTarget::at(s.rx_t.position);
        const auto q = beamform::quantized_conjugate(s, states, target, 1);
        const auto terms = beamform::target_terms(s, states, target);
        ratio[i] = terms.power_codes(q.codes_t, 1) / terms.coherent_power(); });
    double sum = 0.0;
    for (double r : ratio)
        sum += r;
    const double mean = sum / trials;
    c.passed = mean >= quant_lo && mean <= quant_hi;
    c.detail = "N=32, " + std::to_string(trials) + " geometries, mean ratio " + fmt("%.4f", mean) + " (range [" +
               g3(quant_lo) + ", " + g3(quant_hi) + "], (2/pi)^2 = 0.405)";
    return c;
}

Criterion oracle_dominance(const Options &o)
{
    Criterion c{5, "oracle dominance exhaustive >= greedy >= quantized", false, {}, 0.0, 60.0};
    constexpr int count = 200;
    struct Outcome
    {
        bool chain = false;
        bool close = false;
    };
    std::vector<Outcome> out(count);
    for (int i = 0; i < count; ++i)
    {
        Rng rng(o.seed, 5, static_cast<std::uint64_t>(i));
        const Scenario s = random_scenario(rng, 10);
        const auto states = random_states(rng, s, 1, 0.0);
        const Side side = rng.coin() ? Side::reflect : Side::transmit;
        const auto target = SteeringTarget::at(s.receiver(side).position);
        const auto base = beamform::configuration_of(states);
        const auto q = beamform::quantized_conjugate(s, states, target, 1, &base);
        const auto g = beamform::greedy_optimize(s, states, target, 1, q, 100);
        const auto e = beamform::exhaustive_search(s, states, target, 1, &base);
        const auto terms = beamform::target_terms(s, states, target);
        const double pq = terms.power_codes(q.codes(side), 1);
        const double slack = tol_dominance * e.power;
        out[i].chain = e.power + slack >= g.power && g.power + slack >= pq;
        out[i].close = g.power >= greedy_fraction * e.power;
    }
    int chain = 0;
    int close = 0;
    for (const auto &x : out)
    {
        chain += x.chain;
        close += x.close;
    }
    const double share = static_cast<double>(close) / count;
    c.passed = chain == count && share >= greedy_share;
    c.detail = "chain held in " + std::to_string(chain) + "/" + std::to_string(count) + "; greedy >= " +
               g3(greedy_fraction) + " x optimum in " + std::to_string(close) + "/" + std::to_string(count) +
               " (need " + g3(greedy_share * 100) + "%)";
    return c;
}

Criterion beamwidth(const Options &)
{
    Criterion c{6, "3 dB beamwidth of the 8x4 prototype", false, {}, 0.0, 5.0};
    const Beam b = prototype_beam(0.0);
    const auto hpbw = beamform::half_power_beamwidth(b.samples);
    c.passed = hpbw && *hpbw >= beamwidth_lo && *hpbw <= beamwidth_hi;
    c.detail = "steered 0 deg, peak at " + fmt("%.1f", b.peak_deg) + " deg, beamwidth " +
               (hpbw ? fmt("%.2f", *hpbw) + " deg" : std::string("undefined")) + " (range [" + g3(beamwidth_lo) +
               ", " + g3(beamwidth_hi) + "] deg)";
    return c;
}

Criterion scan_loss(const Options &)
{
    Criterion c{7, "scan-loss trend at 45 and 52 deg", false, {}, 0.0, 0.0};
    const Beam b0 = prototype_beam(0.0);
    const Beam b45 = prototype_beam(45.0);
    const Beam b52 = prototype_beam(52.0);
    const double d45 = 10.0 * std::log10(b0.peak_w / b45.peak_w);
    const double d52 = 10.0 * std::log10(b0.peak_w / b52.peak_w);
    c.passed = d45 >= scan_drop_lo && d45 <= scan_drop_hi && d52 > d45;
    c.detail = "drop at 45 deg " + fmt("%.2f", d45) + " dB (peak " + fmt("%.1f", b45.peak_deg) + " deg, range [" +
               g3(scan_drop_lo) + ", " + g3(scan_drop_hi) + "]), at 52 deg " + fmt("%.2f", d52) + " dB (peak " +
               fmt("%.1f", b52.peak_deg) + " deg)";
    return c;
}

Criterion calibration(const Options &o)
{
    Criterion c{8, "calibration fidelity", false, {}, 0.0, 0.0};
    const auto &curves = o.calibration ? *o.calibration : element::CalibrationCurves::defaults();
    const auto &table = curves.pa_gain_table();
    const bool anchored =
        std::any_of(table.begin(), table.end(), [](const auto &a) { return a.current_ma == 0.0; }) &&
        std::any_of(table.begin(), table.end(), [](const auto &a) { return a.current_ma == 20.0; });
    const double span = curves.pa_gain_db(20.0) - curves.pa_gain_db(0.0);

    bool monotone = true;
    double prev = curves.pa_gain_db(0.0);
    for (int i = 1; i < 1000; ++i)
    {
        const double g = curves.pa_gain_db(20.0 * i / 999.0);
        monotone &= g >= prev;
        prev = g;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i <= 1000; ++i)
    {
        const double v = curves.min_bias() + (curves.max_bias() - curves.min_bias()) * i / 1000.0;
        const double f = curves.transmit_fraction(v).value;
        if (f <= 0.0 || f >= 1.0)
            continue;
        const double r = 10.0 * std::log10(f / (1.0 - f));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double range = hi - lo;
    c.passed = anchored && span == 12.0 && monotone && range >= min_split_range_db;
    c.detail = "gain(20 mA) - gain(0 mA) = " + fmt("%.6g", span) + " dB" + (anchored ? "" : " (not anchored)") +
               ", monotone over 1000 currents: " + (monotone ? "yes" : "no") + ", split ratio range " +
               fmt("%.2f", range) + " dB (need >= " + g3(min_split_range_db) + ")";
    return c;
}

Criterion oracle_equivalence(const Options &o)
{
    Criterion c{9, "small-N brute-force oracle equivalence", false, {}, 0.0, 0.0};
    constexpr int count = 100;
    std::vector<double> err(count);
    parallel_for(count, [&](std::size_t i)
                 {
        Rng rng(o.seed, 9, i);
        const Scenario s = random_scenario(rng, 4);
        const auto states = random_states(rng, s, rng.integer(1, 3), rng.uniform(0.0, 20.0));
        const Side side = i % 2 ? Side::reflect : Side::transmit;
        const double p = link::received_power(s, states, side);
        const long double ref = oracle::received_power(s, states, side);
        err[i] = static_cast<double>(std::abs((static_cast<long double>(p) - ref) / ref)); });
    const double worst = *std::max_element(err.begin(), err.end());
    c.passed = worst < tol_oracle;
    c.detail = std::to_string(count) + " scenarios with N <= 4, max rel err " + g3(worst) + " (tol " +
               g3(tol_oracle) + ")";
    return c;
}

Criterion timed(Criterion (*fn)(const Options &), const Options &o)
{
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try
    {
        c = fn(o);
    }
    catch (const std::exception &e)
    {
        c.passed = false;
        c.detail = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0.0 && c.seconds >= c.limit_seconds)
    {
        c.passed = false;
        c.detail += "; runtime limit of " + g3(c.limit_seconds) + " s exceeded";
    }
    return c;
}

} // namespace

bool Report::all_passed() const
{
    return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](const auto &c) { return c.passed; });
}

std::string Report::text() const
{
    std::string out = "starsim acceptance suite, seed " + std::to_string(seed) + "\n";
    int passed = 0;
    for (const auto &c : criteria)
    {
        passed += c.passed;
        out += std::string(c.passed ? "PASS" : "FAIL") + " " + (c.id < 10 ? " " : "") + std::to_string(c.id) +
               "  " + c.title + ": " + c.detail + "\n";
    }
    out += std::to_string(passed) + "/" + std::to_string(criteria.size()) + " criteria passed\n";
    return out;
}

std::string Report::timings() const
{
    std::string out;
    for (const auto &c : criteria)
        out += "criterion " + std::to_string(c.id) + ": " + fmt("%.3f", c.seconds) + " s" +
               (c.limit_seconds > 0.0 ? " (limit " + g3(c.limit_seconds) + " s)" : std::string()) + "\n";
    return out;
}

Report run_core(const Options &o)
{
    Report r;
    r.seed = o.seed;
    for (auto fn : {coherent_gain, path_loss_identity, energy_budget, quantization_loss, oracle_dominance,
                    beamwidth, scan_loss, calibration, oracle_equivalence})
        r.criteria.push_back(timed(fn, o));
    return r;
}

Report run(const Options &o)
{
    const auto t0 = std::chrono::steady_clock::now();
    Report r = run_core(o);

    const unsigned saved = thread_count();
    Criterion c{10, "reproducibility across thread counts", false, {}, 0.0, 0.0};
    try
    {
        set_thread_count(static_cast<unsigned>(std::max(1, o.alternate_threads)));
        const Report again = run_core(o);
        set_thread_count(saved);
        c.passed = again.text() == r.text();
        c.detail = "criteria 1-9 rerun with a different worker count: " +
                   std::string(c.passed ? "byte-identical" : "reports differ");
    }
    catch (const std::exception &e)
    {
        set_thread_count(saved);
        c.detail = std::string("error: ") + e.what();
    }
    // Thread counts are not printed so the text stays comparable between runs.
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.criteria.push_back(c);
    return r;
}

} // namespace starsim::acceptance
