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
#include "starsim/element.hpp"

#include "starsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace starsim::element
{

using std::numbers::pi;

namespace
{

constexpr int max_bits = 16;

double port_ratio_db(double fraction)
{
    return 10.0 * std::log10(fraction / (1.0 - fraction));
}

double fraction_from_ratio_db(double db)
{
    const double r = std::pow(10.0, db / 10.0);
    return r / (1.0 + r);
}

void check_bits(int bits)
{
    if (bits < 1 || bits > max_bits)
        fail(ErrorCode::invalid_parameter, "phase resolution must be 1.." + std::to_string(max_bits) +
                                               " bits, got " + std::to_string(bits));
}

} // namespace

void ElementState::validate() const
{
    check_bits(bits);
    const int n = codebook_size(bits);
    if (phase_code_t < 0 || phase_code_t >= n || phase_code_r < 0 || phase_code_r >= n)
        fail(ErrorCode::invalid_parameter, "phase code outside the " + std::to_string(bits) + "-bit codebook");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        fail(ErrorCode::invalid_parameter, "element efficiency must lie in (0, 1]");
    if (!(pa_ma >= 0.0) || !std::isfinite(pa_ma))
        fail(ErrorCode::invalid_parameter, "amplifier current must be >= 0 mA");
    if (!std::isfinite(bias_v))
        fail(ErrorCode::invalid_parameter, "bias voltage must be finite");
    if (!std::isfinite(phase_error_t) || !std::isfinite(phase_error_r))
        fail(ErrorCode::invalid_parameter, "phase error must be finite");
}

CalibrationCurves::CalibrationCurves(std::vector<PaGainAnchor> pa_gain_table, std::vector<SplitAnchor> split_table)
    : pa_(std::move(pa_gain_table)), split_(std::move(split_table))
{
    if (pa_.empty())
        fail(ErrorCode::configuration, "pa_gain_table is empty");
    if (pa_.front().current_ma != 0.0 || pa_.front().gain_db != 0.0)
        fail(ErrorCode::configuration, "pa_gain_table must start at 0 mA with 0 dB gain");
    for (std::size_t i = 1; i < pa_.size(); ++i)
    {
        if (!(pa_[i].current_ma > pa_[i - 1].current_ma))
            fail(ErrorCode::configuration, "pa_gain_table currents must be strictly increasing");
        if (!(pa_[i].gain_db >= pa_[i - 1].gain_db) || !std::isfinite(pa_[i].gain_db))
            fail(ErrorCode::configuration, "pa_gain_table gains must be nondecreasing");
    }

    if (split_.size() < 2)
        fail(ErrorCode::configuration, "split_table needs at least two anchors");
    for (const auto &a : split_)
        if (!(a.transmit_fraction >= 0.0 && a.transmit_fraction <= 1.0) || !std::isfinite(a.bias_v))
            fail(ErrorCode::configuration, "split_table fractions must lie in [0, 1]");
    const bool rising = split_[1].transmit_fraction > split_[0].transmit_fraction;
    for (std::size_t i = 1; i < split_.size(); ++i)
    {
        if (!(split_[i].bias_v > split_[i - 1].bias_v))
            fail(ErrorCode::configuration, "split_table bias voltages must be strictly increasing");
        const bool up = split_[i].transmit_fraction > split_[i - 1].transmit_fraction;
        if (up != rising || split_[i].transmit_fraction == split_[i - 1].transmit_fraction)
            fail(ErrorCode::configuration, "split_table fractions must be strictly monotone in bias");
    }
    const double lo_frac = std::min(split_.front().transmit_fraction, split_.back().transmit_fraction);
    const double hi_frac = std::max(split_.front().transmit_fraction, split_.back().transmit_fraction);
    if (lo_frac > 0.0 && 10.0 * std::log10(hi_frac / lo_frac) < 6.0)
        fail(ErrorCode::configuration, "split_table must span at least 6 dB of transmit power");
}

const CalibrationCurves &CalibrationCurves::defaults()
{
    static const CalibrationCurves curves(
        {{0.0, 0.0}, {5.0, 4.0}, {10.0, 10.0}, {20.0, 12.0}},
        {{0.0, 0.863}, {11.0, 0.5}, {28.0, 0.137}});
    return curves;
}

double CalibrationCurves::pa_gain_db(double current_ma) const
{
    if (!(current_ma > pa_.front().current_ma))
        return pa_.front().gain_db;
    if (current_ma >= pa_.back().current_ma)
        return pa_.back().gain_db;
    const auto hi = std::upper_bound(pa_.begin(), pa_.end(), current_ma,
                                     [](double c, const PaGainAnchor &a)
                                     { return c < a.current_ma; });
    const auto lo = hi - 1;
    if (current_ma == lo->current_ma)
        return lo->gain_db;
    const double t = (current_ma - lo->current_ma) / (hi->current_ma - lo->current_ma);
    return lo->gain_db + t * (hi->gain_db - lo->gain_db);
}

CalibrationCurves::Fraction CalibrationCurves::transmit_fraction(double bias_v) const
{
    if (bias_v <= split_.front().bias_v)
        return {split_.front().transmit_fraction, bias_v < split_.front().bias_v};
    if (bias_v >= split_.back().bias_v)
        return {split_.back().transmit_fraction, bias_v > split_.back().bias_v};
    const auto hi = std::upper_bound(split_.begin(), split_.end(), bias_v,
                                     [](double v, const SplitAnchor &a)
                                     { return v < a.bias_v; });
    const auto lo = hi - 1;
    if (bias_v == lo->bias_v)
        return {lo->transmit_fraction, false};
    const double t = (bias_v - lo->bias_v) / (hi->bias_v - lo->bias_v);
    const auto interior = [](double f)
    { return f > 0.0 && f < 1.0; };
    // A fully one-sided anchor has an infinite port ratio; fall back to the
    // fraction domain on that segment.
    if (!interior(lo->transmit_fraction) || !interior(hi->transmit_fraction))
        return {lo->transmit_fraction + t * (hi->transmit_fraction - lo->transmit_fraction), false};
    const double db = port_ratio_db(lo->transmit_fraction) +
                      t * (port_ratio_db(hi->transmit_fraction) - port_ratio_db(lo->transmit_fraction));
    return {fraction_from_ratio_db(db), false};
}

double CalibrationCurves::min_bias() const { return split_.front().bias_v; }
double CalibrationCurves::max_bias() const { return split_.back().bias_v; }

int codebook_size(int bits)
{
    check_bits(bits);
    return 1 << bits;
}

double codebook_phase(int code, int bits)
{
    const int n = codebook_size(bits);
    if (code < 0 || code >= n)
        fail(ErrorCode::invalid_parameter, "phase code " + std::to_string(code) + " outside the " +
                                               std::to_string(bits) + "-bit codebook");
    return 2.0 * pi * code / n;
}

std::vector<double> codebook(int bits)
{
    const int n = codebook_size(bits);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
        out[k] = codebook_phase(k, bits);
    return out;
}

double circular_distance(double a, double b)
{
    const double d = std::fmod(std::abs(a - b), 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
}

int quantize_phase(double ideal_phase, int bits)
{
    const int n = codebook_size(bits);
    if (!std::isfinite(ideal_phase))
        fail(ErrorCode::invalid_parameter, "phase must be finite");
    const double wrapped = channel::wrap_phase(ideal_phase);
    const int guess = static_cast<int>(std::floor(wrapped / (2.0 * pi) * n + 0.5));
    int best = -1;
    double best_dist = 0.0;
    // Only the two or three nearest entries can win; check them in code order.
    int candidates[3] = {(guess - 1 + n) % n, guess % n, (guess + 1) % n};
    std::sort(std::begin(candidates), std::end(candidates));
    for (int c : candidates)
    {
        const double d = circular_distance(wrapped, codebook_phase(c, bits));
        if (best < 0 || d < best_dist)
        {
            best = c;
            best_dist = d;
        }
    }
    return best;
}

double pa_gain(double current_ma, const CalibrationCurves &curves)
{
    return channel::db_to_linear(curves.pa_gain_db(current_ma));
}

PowerSplit split_coefficients(double bias_v, double efficiency, const CalibrationCurves &curves)
{
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        fail(ErrorCode::invalid_parameter, "element efficiency must lie in (0, 1]");
    if (!std::isfinite(bias_v))
        fail(ErrorCode::invalid_parameter, "bias voltage must be finite");
    const auto frac = curves.transmit_fraction(bias_v);
    PowerSplit s;
    s.clamped = frac.clamped;
    s.transmit = efficiency * frac.value;
    // Subtraction can round so that eta_t + eta_r misses eta_n by an ulp.
    // Try the neighbours of the difference; on an exact rounding tie move
    // eta_t by one ulp instead.
    for (int attempt = 0; attempt < 64; ++attempt)
    {
        const double r = efficiency - s.transmit;
        for (double cand : {r, std::nextafter(r, 2.0), std::nextafter(r, 0.0)})
        {
            if (cand >= 0.0 && s.transmit + cand == efficiency)
            {
                s.reflect = cand;
                return s;
            }
        }
        s.transmit = std::nextafter(s.transmit, 0.0);
    }
    fail(ErrorCode::invalid_parameter, "power split does not close the efficiency budget");
}

double scattering_amplitude(double split_fraction, double amplifier_gain, double incident_zenith,
                            double depart_zenith, double wavelength, const channel::AntennaPattern &element_pattern)
{
    const double aperture = channel::effective_aperture(element_pattern.peak_gain, wavelength);
    const double mu = element_pattern.amplitude(incident_zenith) * element_pattern.amplitude(depart_zenith);
    return std::sqrt(split_fraction) * mu * std::sqrt(aperture * aperture * amplifier_gain);
}

RcsComponent element_rcs(const ElementState &state, double incident_zenith, double depart_zenith,
                         double wavelength, const channel::AntennaPattern &element_pattern, Side side,
                         const CalibrationCurves &curves)
{
    state.validate();
    const auto split = split_coefficients(state.bias_v, state.efficiency, curves);
    const double gain = pa_gain(state.pa_ma, curves);
    return {scattering_amplitude(split.for_side(side), gain, incident_zenith, depart_zenith, wavelength,
                                 element_pattern),
            codebook_phase(state.code(side), state.bits)};
}

ElementResponse element_response(const ElementState &state, double incident_zenith, double depart_zenith_t,
                                 double depart_zenith_r, double wavelength,
                                 const channel::AntennaPattern &element_pattern, const CalibrationCurves &curves)
{
    const auto t = element_rcs(state, incident_zenith, depart_zenith_t, wavelength, element_pattern,
                               Side::transmit, curves);
    const auto r = element_rcs(state, incident_zenith, depart_zenith_r, wavelength, element_pattern,
                               Side::reflect, curves);
    return {t.sigma, r.sigma, t.phase, r.phase};
}

double phase_jitter(double code_phase, double jitter_bound_deg, std::uint64_t seed)
{
    if (!(jitter_bound_deg >= 0.0) || !std::isfinite(jitter_bound_deg))
        fail(ErrorCode::invalid_parameter, "jitter bound must be >= 0 degrees");
    if (jitter_bound_deg == 0.0)
        return code_phase;
    std::mt19937_64 rng(seed);
    // Portable [0, 1) draw from the top 53 bits.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double bound = jitter_bound_deg * pi / 180.0;
    return code_phase + (2.0 * u - 1.0) * bound;
}

} // namespace starsim::element
