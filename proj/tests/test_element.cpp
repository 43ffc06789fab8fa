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
#include "support.hpp"

#include <random>

using namespace starsim;
using namespace starsim::element;
using test_support::deg;
using test_support::pi;
using test_support::rel_err;

namespace
{
const CalibrationCurves &cal() { return CalibrationCurves::defaults(); }
}

TEST_CASE("two-bit codebook")
{
    const auto cb = codebook(2);
    REQUIRE(cb.size() == 4);
    CHECK(cb[0] == 0.0);
    CHECK(cb[1] == doctest::Approx(pi / 2).epsilon(1e-16));
    CHECK(cb[2] == doctest::Approx(pi).epsilon(1e-16));
    CHECK(cb[3] == doctest::Approx(1.5 * pi).epsilon(1e-16));
    CHECK(codebook_size(6) == 64);
    CHECK_CODE(codebook(0), ErrorCode::invalid_parameter);
    CHECK_CODE(codebook_phase(2, 1), ErrorCode::invalid_parameter);
    CHECK_CODE(codebook_phase(-1, 3), ErrorCode::invalid_parameter);
}

TEST_CASE("quantization examples")
{
    CHECK(quantize_phase(0.4 * pi, 1) == 0);
    CHECK(quantize_phase(0.6 * pi, 1) == 1);
    CHECK(quantize_phase(1.99 * pi, 1) == 0);
    CHECK(quantize_phase(-0.01 * pi, 1) == 0);
    // exact midpoint between 0 and pi: smaller code wins
    CHECK(quantize_phase(pi / 2, 1) == 0);
    CHECK(quantize_phase(pi / 4, 2) == 0);
    CHECK_CODE(quantize_phase(std::nan(""), 1), ErrorCode::invalid_parameter);
}

TEST_CASE("quantization is idempotent on the codebook")
{
    for (int m = 1; m <= 6; ++m)
        for (int k = 0; k < codebook_size(m); ++k)
            CHECK(quantize_phase(codebook_phase(k, m), m) == k);
}

TEST_CASE("quantization error is at most half a step")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int m = 1; m <= 6; ++m)
    {
        double worst = 0.0;
        for (int i = 0; i < 20000; ++i)
        {
            const double x = u(rng);
            const int k = quantize_phase(x, m);
            REQUIRE(k >= 0);
            REQUIRE(k < codebook_size(m));
            worst = std::max(worst, circular_distance(x, codebook_phase(k, m)));
        }
        CHECK(worst <= pi / (1 << m) + 1e-12);
    }
}

TEST_CASE("amplifier gain anchors")
{
    CHECK(cal().pa_gain_db(0.0) == 0.0);
    CHECK(pa_gain(0.0, cal()) == 1.0);
    CHECK(cal().pa_gain_db(5.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(cal().pa_gain_db(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(cal().pa_gain_db(20.0) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(cal().pa_gain_db(20.0) - cal().pa_gain_db(0.0) == 12.0);
    CHECK(cal().pa_gain_db(35.0) == 12.0);
    CHECK(pa_gain(10.0, cal()) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(cal().pa_gain_db(15.0) == doctest::Approx(11.0));
}

TEST_CASE("amplifier gain is monotone")
{
    double prev = -1.0;
    for (int i = 0; i < 1000; ++i)
    {
        const double g = pa_gain(20.0 * i / 999.0, cal());
        CHECK(g >= prev);
        prev = g;
    }
}

TEST_CASE("equal split at 11 V")
{
    const auto s = split_coefficients(11.0, 0.8, cal());
    CHECK(s.transmit == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(s.reflect == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(s.transmit + s.reflect == 0.8);
    CHECK_FALSE(s.clamped);
}

TEST_CASE("split endpoints span the calibrated ratio")
{
    const auto lo = split_coefficients(cal().min_bias(), 1.0, cal());
    const auto hi = split_coefficients(cal().max_bias(), 1.0, cal());
    const double r_lo = 10.0 * std::log10(lo.transmit / lo.reflect);
    const double r_hi = 10.0 * std::log10(hi.transmit / hi.reflect);
    CHECK(std::abs(r_lo - r_hi) >= 8.0);
    CHECK(r_lo == doctest::Approx(8.0).epsilon(0.01));
    // transmit power itself spans more than 6 dB
    CHECK(10.0 * std::log10(lo.transmit / hi.transmit) >= 6.0);
}

TEST_CASE("split is clamped outside the calibrated range")
{
    const auto below = split_coefficients(-3.0, 0.5, cal());
    const auto above = split_coefficients(40.0, 0.5, cal());
    CHECK(below.clamped);
    CHECK(above.clamped);
    CHECK(below.transmit == split_coefficients(cal().min_bias(), 0.5, cal()).transmit);
    CHECK(above.transmit == split_coefficients(cal().max_bias(), 0.5, cal()).transmit);
    CHECK_CODE(split_coefficients(11.0, 0.0, cal()), ErrorCode::invalid_parameter);
    CHECK_CODE(split_coefficients(11.0, 1.5, cal()), ErrorCode::invalid_parameter);
}

TEST_CASE("energy budget closes exactly")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> bias(-5.0, 35.0);
    std::uniform_real_distribution<double> eff(0.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 100000; ++i)
    {
        double e = eff(rng);
        if (e == 0.0)
            e = 1.0;
        const auto s = split_coefficients(bias(rng), e, cal());
        if (!(s.transmit + s.reflect == e) || s.transmit < 0.0 || s.reflect < 0.0 || e > 1.0)
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("split fraction is monotone in bias")
{
    double prev = 2.0;
    for (int i = 0; i <= 280; ++i)
    {
        const double f = cal().transmit_fraction(i * 0.1).value;
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("scattering amplitude examples")
{
    const double lambda = channel::wavelength(2.6e9);
    const auto iso = channel::AntennaPattern::isotropic();
    const double sigma = scattering_amplitude(1.0, 1.0, 0.0, 0.0, lambda, iso);
    CHECK(sigma == doctest::Approx(lambda * lambda / (4.0 * pi)).epsilon(1e-15));

    const auto cos1 = channel::AntennaPattern::cosine_power_normalized(1.0);
    CHECK(scattering_amplitude(0.5, 3.0, deg(20.0), pi / 2, lambda, cos1) == 0.0);
    CHECK(scattering_amplitude(0.5, 3.0, pi / 2, 0.0, lambda, cos1) == 0.0);

    const double base = scattering_amplitude(0.3, 2.0, 0.2, 0.4, lambda, cos1);
    CHECK(scattering_amplitude(0.3, 8.0, 0.2, 0.4, lambda, cos1) == doctest::Approx(2.0 * base).epsilon(1e-14));
}

TEST_CASE("scattering amplitude scales with sqrt of split and gain")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto cos1 = channel::AntennaPattern::cosine_power_normalized(1.0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i)
    {
        const double lambda = channel::wavelength(1e9 + 5e9 * u(rng));
        const double eta = 0.01 + 0.99 * u(rng);
        const double g = 1.0 + 20.0 * u(rng);
        const double a = 1.4 * u(rng);
        const double b = 1.4 * u(rng);
        const double k = 0.05 + 10.0 * u(rng);
        const double s0 = scattering_amplitude(eta, g, a, b, lambda, cos1);
        worst = std::max(worst, rel_err(scattering_amplitude(eta * k, g, a, b, lambda, cos1), std::sqrt(k) * s0));
        worst = std::max(worst, rel_err(scattering_amplitude(eta, g * k, a, b, lambda, cos1), std::sqrt(k) * s0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("element response uses the state's split, gain and codes")
{
    const double lambda = channel::wavelength(2.6e9);
    const auto cos1 = channel::AntennaPattern::cosine_power_normalized(1.0);
    ElementState st;
    st.bits = 2;
    st.phase_code_t = 1;
    st.phase_code_r = 3;
    st.bias_v = 11.0;
    st.pa_ma = 10.0;
    st.efficiency = 0.8;
    const auto r = element_response(st, 0.1, 0.2, 0.3, lambda, cos1, cal());
    CHECK(r.sigma_t == doctest::Approx(scattering_amplitude(0.4, 10.0, 0.1, 0.2, lambda, cos1)).epsilon(1e-14));
    CHECK(r.sigma_r == doctest::Approx(scattering_amplitude(0.4, 10.0, 0.1, 0.3, lambda, cos1)).epsilon(1e-14));
    CHECK(r.phase_t == doctest::Approx(pi / 2));
    CHECK(r.phase_r == doctest::Approx(1.5 * pi));

    st.phase_code_t = 4;
    CHECK_CODE(element_rcs(st, 0.0, 0.0, lambda, cos1, Side::transmit, cal()), ErrorCode::invalid_parameter);
    st.phase_code_t = 0;
    st.efficiency = 1.2;
    CHECK_CODE(st.validate(), ErrorCode::invalid_parameter);
}

TEST_CASE("phase jitter")
{
    CHECK(phase_jitter(1.25, 0.0, 99) == 1.25);
    double lo = 1.0, hi = -1.0;
    for (std::uint64_t seed = 0; seed < 5000; ++seed)
    {
        const double out = phase_jitter(pi, 10.0, seed);
        const double d = out - pi;
        CHECK(std::abs(d) <= deg(10.0));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        CHECK(phase_jitter(pi, 10.0, seed) == out);
    }
    // the draws actually cover the interval
    CHECK(lo < -deg(9.0));
    CHECK(hi > deg(9.0));
    CHECK(phase_jitter(0.0, 10.0, 1) != phase_jitter(0.0, 10.0, 2));
    CHECK_CODE(phase_jitter(0.0, -1.0, 1), ErrorCode::invalid_parameter);
}

TEST_CASE("default calibration tables")
{
    const std::vector<PaGainAnchor> pa{{0, 0}, {5, 4}, {10, 10}, {20, 12}};
    const std::vector<SplitAnchor> split{{0, 0.863}, {11, 0.5}, {28, 0.137}};
    CHECK(cal().pa_gain_table() == pa);
    CHECK(cal().split_table() == split);
}

TEST_CASE("calibration tables are validated")
{
    const std::vector<SplitAnchor> split{{0, 0.863}, {28, 0.137}};
    const std::vector<PaGainAnchor> pa{{0, 0}, {20, 12}};
    CHECK_NOTHROW(CalibrationCurves(pa, split));
    CHECK_CODE(CalibrationCurves({}, split), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves({{1, 0}, {20, 12}}, split), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves({{0, 1}, {20, 12}}, split), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves({{0, 0}, {20, 12}, {10, 13}}, split), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves({{0, 0}, {10, 12}, {20, 11}}, split), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves(pa, {{11, 0.5}}), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves(pa, {{0, 1.2}, {28, 0.1}}), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves(pa, {{28, 0.8}, {0, 0.2}}), ErrorCode::configuration);
    CHECK_CODE(CalibrationCurves(pa, {{0, 0.8}, {10, 0.2}, {20, 0.5}}), ErrorCode::configuration);
    // 0.6 -> 0.4 is under 6 dB of transmit power
    CHECK_CODE(CalibrationCurves(pa, {{0, 0.6}, {28, 0.4}}), ErrorCode::configuration);
}
