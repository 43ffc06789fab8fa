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
#include "starsim/channel.hpp"

#include "starsim/error.hpp"

#include <cmath>
#include <numbers>

namespace starsim::channel
{

using std::numbers::pi;

double wavelength(double frequency_hz)
{
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        fail(ErrorCode::invalid_parameter, "carrier frequency must be positive");
    return speed_of_light / frequency_hz;
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

AntennaPattern AntennaPattern::isotropic()
{
    return {};
}

AntennaPattern AntennaPattern::cosine_power(double exponent, double peak_gain)
{
    AntennaPattern p{Kind::cosine_power, exponent, peak_gain};
    p.validate();
    return p;
}

AntennaPattern AntennaPattern::cosine_power_normalized(double exponent)
{
    return cosine_power(exponent, 2.0 * (exponent + 1.0));
}

void AntennaPattern::validate() const
{
    if (kind == Kind::isotropic)
    {
        if (peak_gain != 1.0)
            fail(ErrorCode::invalid_parameter, "isotropic pattern has unit gain");
        return;
    }
    if (!(exponent >= 0.0) || !std::isfinite(exponent))
        fail(ErrorCode::invalid_parameter, "cosine_power exponent must be >= 0");
    if (!(peak_gain >= 1.0) || !std::isfinite(peak_gain))
        fail(ErrorCode::invalid_parameter, "peak gain must be >= 1 (linear)");
}

double AntennaPattern::gain(double zenith) const
{
    if (kind == Kind::isotropic)
        return 1.0;
    if (!(zenith < pi / 2))
        return 0.0;
    if (exponent == 0.0)
        return peak_gain;
    return peak_gain * std::pow(std::cos(zenith), exponent);
}

double AntennaPattern::amplitude(double zenith) const
{
    if (kind == Kind::isotropic)
        return 1.0;
    if (!(zenith < pi / 2))
        return 0.0;
    return std::pow(std::cos(zenith), 0.5 * exponent);
}

double antenna_gain(const AntennaPattern &pattern, double zenith)
{
    return pattern.gain(zenith);
}

double effective_aperture(double gain, double wavelength)
{
    return gain * wavelength * wavelength / (4.0 * pi);
}

double cycles_to_phase(double cycles)
{
    // frac is exact for doubles; only the final scaling rounds.
    double frac = cycles - std::floor(cycles);
    if (frac >= 1.0)
        frac = 0.0;
    return 2.0 * pi * frac;
}

double propagation_phase(double path_length, double wavelength)
{
    return cycles_to_phase(-path_length / wavelength);
}

double wrap_phase(double phase)
{
    double w = std::fmod(phase, 2.0 * pi);
    if (w < 0.0)
        w += 2.0 * pi;
    if (w >= 2.0 * pi)
        w = 0.0;
    return w;
}

ChannelCoefficient free_space_coeff(double src_gain, double dst_aperture, double distance, double wavelength)
{
    if (!(distance > 0.0))
        fail(ErrorCode::degenerate_geometry, "free-space hop needs a positive distance");
    if (!(wavelength > 0.0))
        fail(ErrorCode::invalid_parameter, "wavelength must be positive");
    return {std::sqrt(src_gain * dst_aperture / (4.0 * pi)) / distance, propagation_phase(distance, wavelength)};
}

} // namespace starsim::channel
