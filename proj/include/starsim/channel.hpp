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
#ifndef STARSIM_CHANNEL_HPP
#define STARSIM_CHANNEL_HPP

#include <complex>

namespace starsim::channel
{

inline constexpr double speed_of_light = 299792458.0; // m/s

double wavelength(double frequency_hz);

double db_to_linear(double db);
double linear_to_db(double linear);

// Antenna power-gain pattern, rotationally symmetric about the boresight.
//   isotropic:     gain = 1
//   cosine_power:  gain = peak_gain * cos^q(theta) for theta < pi/2, else 0
struct AntennaPattern
{
    enum class Kind
    {
        isotropic,
        cosine_power,
    };

    Kind kind = Kind::isotropic;
    double exponent = 0.0;
    double peak_gain = 1.0;

    static AntennaPattern isotropic();
    static AntennaPattern cosine_power(double exponent, double peak_gain);
    // Peak gain 2(q+1): the pattern radiates into one hemisphere losslessly.
    static AntennaPattern cosine_power_normalized(double exponent);

    void validate() const;

    // Linear power gain at the given angle off boresight.
    double gain(double zenith) const;
    // Normalized amplitude pattern sqrt(gain/peak_gain), in [0, 1].
    double amplitude(double zenith) const;

    friend bool operator==(const AntennaPattern &, const AntennaPattern &) = default;
};

double antenna_gain(const AntennaPattern &pattern, double zenith);

// A = G lambda^2 / 4pi
double effective_aperture(double gain, double wavelength);

// Reduces 2*pi*cycles into [0, 2pi) by splitting whole cycles off first.
double cycles_to_phase(double cycles);

// (-2pi * path_length / wavelength) mod 2pi.
double propagation_phase(double path_length, double wavelength);

double wrap_phase(double phase);

struct ChannelCoefficient
{
    double amplitude = 0.0;
    double phase = 0.0; // [0, 2pi)

    std::complex<double> value() const { return std::polar(amplitude, phase); }
};

// One free-space hop: amplitude sqrt(G A / 4pi) / r, phase -2pi r / lambda.
ChannelCoefficient free_space_coeff(double src_gain, double dst_aperture, double distance, double wavelength);

} // namespace starsim::channel

#endif
