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
#ifndef STARSIM_ELEMENT_HPP
#define STARSIM_ELEMENT_HPP

#include "starsim/channel.hpp"
#include "starsim/geometry.hpp"

#include <cstdint>
#include <vector>

namespace starsim::element
{

using geometry::Side;

// Control word of one active element.
struct ElementState
{
    int phase_code_t = 0;
    int phase_code_r = 0;
    int bits = 1;
    double bias_v = 11.0;
    double pa_ma = 0.0;
    double efficiency = 0.8; // eta_n, power fraction in (0, 1]
    // Hardware phase error added on top of the codebook phase, radians.
    double phase_error_t = 0.0;
    double phase_error_r = 0.0;

    int code(Side side) const { return side == Side::transmit ? phase_code_t : phase_code_r; }
    double phase_error(Side side) const { return side == Side::transmit ? phase_error_t : phase_error_r; }

    void validate() const;

    friend bool operator==(const ElementState &, const ElementState &) = default;
};

struct PaGainAnchor
{
    double current_ma;
    double gain_db;
    friend bool operator==(const PaGainAnchor &, const PaGainAnchor &) = default;
};

struct SplitAnchor
{
    double bias_v;
    double transmit_fraction; // eta_t / eta_n
    friend bool operator==(const SplitAnchor &, const SplitAnchor &) = default;
};

// Measured amplifier-gain and power-split curves. Immutable once built.
//
// pa_gain_table: current (mA) -> gain (dB), piecewise linear in (mA, dB),
// nondecreasing, starting at 0 mA / 0 dB (passive baseline). Currents beyond
// the last anchor clamp to it.
//
// split_table: bias (V) -> eta_t/eta_n, strictly inside (0, 1), monotone in
// bias. Interpolated linearly in V against the port ratio
// 10 log10(eta_t/eta_r); the endpoints must span at least 6 dB of eta_t.
class CalibrationCurves
{
public:
    CalibrationCurves(std::vector<PaGainAnchor> pa_gain_table, std::vector<SplitAnchor> split_table);

    // (0,0) (5,4) (10,10) (20,12) and (0 V, 0.863) (11 V, 0.5) (28 V, 0.137).
    static const CalibrationCurves &defaults();

    const std::vector<PaGainAnchor> &pa_gain_table() const { return pa_; }
    const std::vector<SplitAnchor> &split_table() const { return split_; }

    double pa_gain_db(double current_ma) const;

    struct Fraction
    {
        double value;
        bool clamped;
    };
    Fraction transmit_fraction(double bias_v) const;

    double min_bias() const;
    double max_bias() const;

    friend bool operator==(const CalibrationCurves &, const CalibrationCurves &) = default;

private:
    std::vector<PaGainAnchor> pa_;
    std::vector<SplitAnchor> split_;
};

// m-bit codebook {k * 2pi / 2^m}.
std::vector<double> codebook(int bits);
double codebook_phase(int code, int bits);
int codebook_size(int bits);

// Nearest codebook entry by circular distance; ties go to the smaller code.
int quantize_phase(double ideal_phase, int bits);

// Circular distance in [0, pi].
double circular_distance(double a, double b);

// Linear amplifier gain G_n.
double pa_gain(double current_ma, const CalibrationCurves &curves);

struct PowerSplit
{
    double transmit = 0.0; // eta_t
    double reflect = 0.0;  // eta_r
    bool clamped = false;  // bias was outside the calibrated range

    double for_side(Side side) const { return side == Side::transmit ? transmit : reflect; }
};

// eta_t + eta_r == efficiency exactly (bit-for-bit in double arithmetic).
PowerSplit split_coefficients(double bias_v, double efficiency, const CalibrationCurves &curves);

struct ElementResponse
{
    double sigma_t = 0.0;
    double sigma_r = 0.0;
    double phase_t = 0.0;
    double phase_r = 0.0;
};

struct RcsComponent
{
    double sigma = 0.0; // m^2
    double phase = 0.0; // rad
};

// sigma = sqrt(eta_side) * mu(in) * mu(out) * sqrt(A_in * A_out * G_n)
// where mu is the element's amplitude pattern and A = peak_gain lambda^2/4pi
// is the element aperture at boresight.
double scattering_amplitude(double split_fraction, double amplifier_gain, double incident_zenith,
                            double depart_zenith, double wavelength, const channel::AntennaPattern &element_pattern);

RcsComponent element_rcs(const ElementState &state, double incident_zenith, double depart_zenith,
                         double wavelength, const channel::AntennaPattern &element_pattern, Side side,
                         const CalibrationCurves &curves);

ElementResponse element_response(const ElementState &state, double incident_zenith, double depart_zenith_t,
                                 double depart_zenith_r, double wavelength,
                                 const channel::AntennaPattern &element_pattern, const CalibrationCurves &curves);

// code_phase plus a uniform error in [-bound, +bound], reproducible from seed.
double phase_jitter(double code_phase, double jitter_bound_deg, std::uint64_t seed);

} // namespace starsim::element

#endif
