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
#ifndef STARSIM_TEST_SUPPORT_HPP
#define STARSIM_TEST_SUPPORT_HPP

#include "starsim/error.hpp"
#include "starsim/link.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace test_support
{

using namespace starsim;

inline constexpr double pi = std::numbers::pi;

inline double deg(double d) { return d * pi / 180.0; }

inline double rel_err(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

#define CHECK_CODE(expr, expected_code)                                                                          \
    do                                                                                                           \
    {                                                                                                            \
        bool thrown_ = false;                                                                                    \
        try                                                                                                      \
        {                                                                                                        \
            (void)(expr);                                                                                        \
        }                                                                                                        \
        catch (const starsim::Error &e_)                                                                         \
        {                                                                                                        \
            thrown_ = true;                                                                                      \
            CHECK_MESSAGE(e_.code() == (expected_code), e_.what());                                              \
        }                                                                                                        \
        CHECK_MESSAGE(thrown_, "expected starsim::Error from " #expr);                                           \
    } while (0)

// All-isotropic scenario with terminals straight above / below the array.
inline link::Scenario boresight_scenario(int rows, int cols, double pitch = 0.058, double range = 2.0)
{
    link::Scenario s;
    s.layout = {rows, cols, pitch, pitch};
    s.carrier_hz = 2.6e9;
    s.tx = {geometry::TerminalPosition::on_face(geometry::Side::reflect, range, 0.0, 0.0),
            channel::AntennaPattern::isotropic()};
    s.rx_t = {geometry::TerminalPosition::on_face(geometry::Side::transmit, range, 0.0, 0.0),
              channel::AntennaPattern::isotropic()};
    s.rx_r = {geometry::TerminalPosition::on_face(geometry::Side::reflect, range, deg(30.0), 0.0),
              channel::AntennaPattern::isotropic()};
    s.element_pattern = channel::AntennaPattern::cosine_power_normalized(1.0);
    s.tx_power_w = 1.0;
    return s;
}

// Random scenario with up to n elements (exactly n if exact).
inline link::Scenario random_scenario(std::mt19937_64 &rng, int rows, int cols)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    link::Scenario s;
    s.layout = {rows, cols, 0.02 + 0.08 * u(rng), 0.02 + 0.08 * u(rng)};
    s.carrier_hz = 1e9 + 5e9 * u(rng);
    auto terminal = [&](geometry::Side side)
    {
        const double range = 0.5 + 9.5 * u(rng);
        const double zen = deg(80.0 * u(rng));
        const double az = 2.0 * pi * u(rng);
        channel::AntennaPattern p = u(rng) < 0.5 ? channel::AntennaPattern::isotropic()
                                                 : channel::AntennaPattern::cosine_power_normalized(1.0 + 9.0 * u(rng));
        return link::Terminal{geometry::TerminalPosition::on_face(side, range, zen, az), p};
    };
    s.tx = terminal(geometry::Side::reflect);
    s.rx_t = terminal(geometry::Side::transmit);
    s.rx_r = terminal(geometry::Side::reflect);
    s.element_pattern = u(rng) < 0.5 ? channel::AntennaPattern::isotropic()
                                     : channel::AntennaPattern::cosine_power_normalized(2.0 * u(rng));
    s.tx_power_w = 1e-3 + u(rng);
    return s;
}

inline std::vector<element::ElementState> random_states(std::mt19937_64 &rng, std::size_t n, int bits)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> code(0, (1 << bits) - 1);
    std::vector<element::ElementState> states(n);
    for (auto &st : states)
    {
        st.bits = bits;
        st.phase_code_t = code(rng);
        st.phase_code_r = code(rng);
        st.bias_v = 28.0 * u(rng);
        st.pa_ma = 20.0 * u(rng);
        st.efficiency = 0.1 + 0.9 * u(rng);
    }
    return states;
}

} // namespace test_support

#endif
