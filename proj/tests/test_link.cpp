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
#include "starsim/link.hpp"
#include "support.hpp"

#include <random>

using namespace starsim;
using namespace starsim::link;
using element::ElementState;
using geometry::Side;
using geometry::TerminalPosition;
using test_support::boresight_scenario;
using test_support::deg;
using test_support::pi;
using test_support::rel_err;

namespace
{

// Full transmission at 0 V, full reflection at 28 V.
element::CalibrationCurves one_sided()
{
    return element::CalibrationCurves({{0, 0}, {10, 10}}, {{0.0, 1.0}, {28.0, 0.0}});
}

ElementState passive(double bias_v = 11.0, double efficiency = 0.8)
{
    ElementState st;
    st.bias_v = bias_v;
    st.efficiency = efficiency;
    st.pa_ma = 0.0;
    return st;
}

} // namespace

TEST_CASE("single element reproduces two Friis hops")
{
    for (double r : {0.5, 2.0, 7.3})
    {
        Scenario s = boresight_scenario(1, 1, 0.058, r);
        s.element_pattern = channel::AntennaPattern::isotropic();
        s.calibration = one_sided();
        const auto states = uniform_states(s, passive(0.0, 1.0));
        const double lambda = s.wavelength();
        const double friis = std::pow(lambda / (4.0 * pi * r), 2);
        CHECK(rel_err(received_power(s, states, Side::transmit) / s.tx_power_w, friis * friis) < 1e-13);
        CHECK(received_power(s, states, Side::reflect) == 0.0);
    }
}

TEST_CASE("opposite one-bit phases on a symmetric pair cancel")
{
    Scenario s = boresight_scenario(1, 2);
    auto states = uniform_states(s, passive());
    states[1].phase_code_t = 1;
    const double single = path_terms(s, states, Side::transmit).coherent_power() / 4.0;
    CHECK(received_power(s, states, Side::transmit) <= 1e-24 * single);
}

TEST_CASE("conjugate phases reach the minimum path loss")
{
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const Scenario s = test_support::random_scenario(rng, 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6));
        const auto states = test_support::random_states(rng, s.layout.size(), 1);
        for (Side side : {Side::transmit, Side::reflect})
        {
            const auto terms = path_terms(s, states, side);
            const double p = terms.power(terms.aligning_phases());
            worst = std::max(worst, rel_err(s.tx_power_w / p, min_path_loss(s, states, side)));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("state count must match the layout")
{
    const Scenario s = boresight_scenario(2, 2);
    const std::vector<ElementState> three(3);
    CHECK_CODE(received_power(s, three, Side::transmit), ErrorCode::configuration);
    CHECK_CODE(link_budget(s, three), ErrorCode::configuration);
}

TEST_CASE("co-located identical terms scale as N squared")
{
    const Scenario s = boresight_scenario(1, 1);
    const auto one = path_terms(s, uniform_states(s, passive()), Side::transmit);
    for (std::size_t n : {1u, 4u, 16u, 32u, 1000u})
    {
        PathTerms many(one.prefactor(), std::vector<std::complex<double>>(n, one.terms()[0]));
        const double pl1 = s.tx_power_w / one.coherent_power();
        const double pln = s.tx_power_w / many.coherent_power();
        CHECK(rel_err(pl1 / pln, static_cast<double>(n * n)) < 1e-9);
    }
}

TEST_CASE("adding an element never raises the minimum path loss")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i)
    {
        const Scenario s = test_support::random_scenario(rng, 4, 4);
        const auto states = test_support::random_states(rng, s.layout.size(), 1);
        const auto full = path_terms(s, states, Side::transmit);
        std::vector<std::complex<double>> partial;
        double prev = std::numeric_limits<double>::infinity();
        for (auto t : full.terms())
        {
            partial.push_back(t);
            const double pl = s.tx_power_w / PathTerms(full.prefactor(), partial).coherent_power();
            CHECK(pl <= prev);
            prev = pl;
        }
    }
}

TEST_CASE("snr")
{
    CHECK(snr(1e-9, 1e-12) == doctest::Approx(1000.0));
    CHECK(channel::linear_to_db(snr(1e-9, 1e-12)) == doctest::Approx(30.0));
    CHECK(snr(0.0, 1e-12) == 0.0);
    CHECK_CODE(snr(1.0, 0.0), ErrorCode::invalid_parameter);
    CHECK_CODE(snr(1.0, -1.0), ErrorCode::invalid_parameter);

    Scenario s = boresight_scenario(2, 2);
    const auto states = uniform_states(s, passive());
    const double a = link_budget(s, states).snr_t;
    s.tx_power_w *= 2.0;
    CHECK(link_budget(s, states).snr_t == doctest::Approx(2.0 * a).epsilon(1e-14));
}

TEST_CASE("8x4 array with equalized terms gains 1024")
{
    const Scenario s = boresight_scenario(8, 4);
    const auto states = uniform_states(s, passive());
    auto terms = path_terms(s, states, Side::transmit);
    REQUIRE(terms.size() == 32);
    const double mag = std::abs(terms.terms()[0]);
    for (auto &t : terms.mutable_terms())
        t = std::polar(mag, std::arg(t));
    const double single = terms.prefactor() * mag * mag * s.tx_power_w;
    const double p = terms.power(terms.aligning_phases());
    CHECK(rel_err(p / single, 1024.0) < 1e-9);
}

TEST_CASE("received power never exceeds the coherent bound")
{
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 10000; ++i)
    {
        const int bits = 1 + static_cast<int>(rng() % 4);
        const Scenario s = test_support::random_scenario(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 5));
        auto states = test_support::random_states(rng, s.layout.size(), bits);
        for (auto &st : states)
        {
            st.phase_error_t = deg(10.0) * u(rng);
            st.phase_error_r = deg(10.0) * u(rng);
        }
        for (Side side : {Side::transmit, Side::reflect})
        {
            const double bound = s.tx_power_w / min_path_loss(s, states, side);
            if (received_power(s, states, side) > bound * (1.0 + 1e-9))
                ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("received power is linear in transmit power and amplifier gain")
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i)
    {
        Scenario s = test_support::random_scenario(rng, 3, 3);
        auto states = test_support::random_states(rng, s.layout.size(), 2);
        const double p0 = received_power(s, states, Side::reflect);
        const double k = 0.1 + 10.0 * u(rng);
        s.tx_power_w *= k;
        worst = std::max(worst, rel_err(received_power(s, states, Side::reflect), k * p0));

        // amplifier gain only enters the element's own term, as sqrt(G_n)
        const std::size_t n = rng() % states.size();
        const auto before = path_terms(s, states, Side::transmit);
        const double g0 = element::pa_gain(states[n].pa_ma, s.calibration);
        states[n].pa_ma = 20.0 * u(rng);
        const double g1 = element::pa_gain(states[n].pa_ma, s.calibration);
        const auto after = path_terms(s, states, Side::transmit);
        for (std::size_t j = 0; j < states.size(); ++j)
        {
            const double expect = j == n ? std::sqrt(g1 / g0) : 1.0;
            worst = std::max(worst, rel_err(std::abs(after.terms()[j]), expect * std::abs(before.terms()[j])));
        }
    }
    CHECK(worst < 1e-12);

    // single element: power linear in G_n
    Scenario s = boresight_scenario(1, 1);
    ElementState st = passive();
    st.pa_ma = 5.0;
    const double p5 = received_power(s, uniform_states(s, st), Side::transmit);
    st.pa_ma = 20.0;
    const double p20 = received_power(s, uniform_states(s, st), Side::transmit);
    CHECK(rel_err(p20 / p5, channel::db_to_linear(12.0 - 4.0)) < 1e-12);
}

TEST_CASE("small arrays match the term-by-term oracle")
{
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const int rows = 1 + static_cast<int>(rng() % 2);
        const int cols = 1 + static_cast<int>(rng() % 2);
        const Scenario s = test_support::random_scenario(rng, rows, cols);
        auto states = test_support::random_states(rng, s.layout.size(), 1 + static_cast<int>(rng() % 3));
        for (auto &st : states)
            st.phase_error_t = deg(10.0) * u(rng);
        for (Side side : {Side::transmit, Side::reflect})
        {
            const double p = received_power(s, states, side);
            const double ref = static_cast<double>(oracle::received_power(s, states, side));
            worst = std::max(worst, rel_err(p, ref));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("no contributing element means infinite path loss")
{
    Scenario s = boresight_scenario(2, 2);
    s.calibration = one_sided();
    const auto states = uniform_states(s, passive(0.0, 0.9));
    CHECK(is_unreachable(min_path_loss(s, states, Side::reflect)));
    const LinkResult r = link_budget(s, states);
    CHECK(r.p_rr == 0.0);
    CHECK(is_unreachable(r.pl_r));
    CHECK(is_unreachable(r.pl_r_min));
    CHECK(r.p_rt > 0.0);
    CHECK(std::isfinite(r.pl_t));
}

TEST_CASE("mirror-image receivers see equal power at an equal split")
{
    std::mt19937_64 rng(81);
    for (int i = 0; i < 20; ++i)
    {
        Scenario s = test_support::random_scenario(rng, 3, 2);
        const geometry::Vec3 p = s.rx_t.position.cartesian();
        s.rx_r = {TerminalPosition::from_cartesian({p.x, p.y, -p.z}), s.rx_t.pattern};
        auto states = test_support::random_states(rng, s.layout.size(), 1);
        for (auto &st : states)
        {
            st.bias_v = 11.0;
            st.phase_code_r = st.phase_code_t;
        }
        const LinkResult r = link_budget(s, states);
        CHECK(rel_err(r.p_rt, r.p_rr) < 1e-12);
        CHECK(rel_err(r.pl_t_min, r.pl_r_min) < 1e-12);
    }
}

TEST_CASE("link budget bundles both sides")
{
    Scenario s = boresight_scenario(2, 2);
    s.noise_t_w = 1e-12;
    s.noise_r_w = 2e-12;
    const auto states = uniform_states(s, passive(40.0));
    const LinkResult r = link_budget(s, states);
    CHECK(r.split_clamped);
    CHECK(r.pl_t == doctest::Approx(s.tx_power_w / r.p_rt));
    CHECK(r.pl_t >= r.pl_t_min * (1.0 - 1e-12));
    CHECK(r.pl_r >= r.pl_r_min * (1.0 - 1e-12));
    CHECK(r.snr_r == doctest::Approx(r.p_rr / 2e-12));
    CHECK_FALSE(link_budget(s, uniform_states(s, passive(11.0))).split_clamped);
}

TEST_CASE("scenario validation")
{
    Scenario s = boresight_scenario(1, 1);
    CHECK_NOTHROW(s.validate());
    Scenario bad = s;
    bad.rx_t.position = TerminalPosition::on_face(Side::reflect, 2.0, 0.0, 0.0);
    CHECK_CODE(bad.validate(), ErrorCode::configuration);
    bad = s;
    bad.tx.position = TerminalPosition::on_face(Side::transmit, 2.0, 0.0, 0.0);
    CHECK_CODE(bad.validate(), ErrorCode::configuration);
    bad = s;
    bad.tx_power_w = 0.0;
    CHECK_CODE(bad.validate(), ErrorCode::invalid_parameter);
    bad = s;
    bad.carrier_hz = -1.0;
    CHECK_CODE(bad.validate(), ErrorCode::invalid_parameter);
    bad = s;
    bad.noise_r_w = 0.0;
    CHECK_CODE(bad.validate(), ErrorCode::invalid_parameter);
}

TEST_CASE("compensated sum keeps small terms")
{
    std::vector<std::complex<double>> v{{1e16, 0.0}, {1.0, 0.0}, {-1e16, 0.0}, {1.0, 1.0}};
    const auto s = compensated_sum(v);
    CHECK(s.real() == 2.0);
    CHECK(s.imag() == 1.0);
}
