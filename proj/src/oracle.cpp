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
#include "oracle.hpp"

#include <cmath>
#include <complex>

namespace starsim::oracle
{

namespace
{

using real = long double;
constexpr real pi_l = 3.141592653589793238462643383279502884L;

struct P3
{
    real x, y, z;
};

real norm3(const P3 &a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

real pattern_gain(const channel::AntennaPattern &p, real cos_angle)
{
    if (p.kind == channel::AntennaPattern::Kind::isotropic)
        return 1.0L;
    if (cos_angle <= 0.0L)
        return 0.0L;
    return static_cast<real>(p.peak_gain) * std::pow(cos_angle, static_cast<real>(p.exponent));
}

// One free-space hop: sqrt(G_src A_dst / 4pi) / r, phase -2pi r / lambda.
std::complex<real> hop(real g_src, real g_dst, real r, real lambda)
{
    const real aperture = g_dst * lambda * lambda / (4.0L * pi_l);
    const real amp = std::sqrt(g_src * aperture / (4.0L * pi_l)) / r;
    const real cycles = r / lambda;
    const real phase = -2.0L * pi_l * (cycles - std::floor(cycles));
    return std::polar(amp, phase);
}

} // namespace

long double received_power(const link::Scenario &s, std::span<const element::ElementState> states,
                           geometry::Side side)
{
    const real lambda = 299792458.0L / static_cast<real>(s.carrier_hz);
    const auto &tx_c = s.tx.position.cartesian();
    const auto &rx = s.receiver(side);
    const auto &rx_c = rx.position.cartesian();
    const P3 tx{tx_c.x, tx_c.y, tx_c.z};
    const P3 rr{rx_c.x, rx_c.y, rx_c.z};
    const int nx = s.layout.n_rows;
    const int ny = s.layout.n_cols;

    std::complex<real> y = 0.0L;
    for (int row = 1; row <= nx; ++row)
    {
        for (int col = 1; col <= ny; ++col)
        {
            const std::size_t n = static_cast<std::size_t>((row - 1) * ny + (col - 1));
            const P3 e{(col - (ny + 1) / 2.0L) * static_cast<real>(s.layout.pitch_x),
                       ((nx + 1) / 2.0L - row) * static_cast<real>(s.layout.pitch_y), 0.0L};

            const P3 to_tx{tx.x - e.x, tx.y - e.y, tx.z - e.z};
            const P3 to_rx{rr.x - e.x, rr.y - e.y, rr.z - e.z};
            const real r_t = norm3(to_tx);
            const real r_r = norm3(to_rx);

            // Element-side angles off the normal of the face each terminal sees.
            const real cos_in = std::abs(to_tx.z) / r_t;
            const real cos_out = std::abs(to_rx.z) / r_r;

            // Terminals point at the array center.
            const real cos_tx = (-tx.x * -to_tx.x + -tx.y * -to_tx.y + -tx.z * -to_tx.z) / (norm3(tx) * r_t);
            const real cos_rx = (-rr.x * -to_rx.x + -rr.y * -to_rx.y + -rr.z * -to_rx.z) / (norm3(rr) * r_r);

            const real g_tx = pattern_gain(s.tx.pattern, cos_tx);
            const real g_rx = pattern_gain(rx.pattern, cos_rx);
            const real g_in = pattern_gain(s.element_pattern, cos_in);
            const real g_out = pattern_gain(s.element_pattern, cos_out);

            const auto &st = states[n];
            const auto split = element::split_coefficients(st.bias_v, st.efficiency, s.calibration);
            const real eta = side == geometry::Side::transmit ? split.transmit : split.reflect;
            const real g_n = std::pow(10.0L, static_cast<real>(s.calibration.pa_gain_db(st.pa_ma)) / 10.0L);
            const real code = side == geometry::Side::transmit ? st.phase_code_t : st.phase_code_r;
            const real phi = 2.0L * pi_l * code / std::ldexp(1.0L, st.bits) +
                             static_cast<real>(st.phase_error(side));

            const auto f = hop(g_tx, g_in, r_t, lambda);
            const auto g = hop(g_out, g_rx, r_r, lambda);
            const auto gamma = std::polar(std::sqrt(eta * g_n), phi);
            y += f * gamma * g;
        }
    }
    return static_cast<real>(s.tx_power_w) * std::norm(y);
}

} // namespace starsim::oracle
