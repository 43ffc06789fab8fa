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
#include "starsim/geometry.hpp"
#include "support.hpp"

#include <random>

using namespace starsim;
using namespace starsim::geometry;
using test_support::deg;
using test_support::pi;

TEST_CASE("single element sits at the origin")
{
    const Vec3 p = element_position(1, 1, {1, 1, 0.058, 0.058});
    CHECK(p == Vec3{0.0, 0.0, 0.0});
}

TEST_CASE("first element of a 2x2 layout")
{
    const Vec3 p = element_position(1, 1, {2, 2, 0.058, 0.058});
    CHECK(p.x == doctest::Approx(-0.029).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.029).epsilon(1e-15));
    CHECK(p.z == 0.0);
}

TEST_CASE("rows run along y, columns along x")
{
    const ArrayLayout l{8, 4, 0.05, 0.07};
    // row offset pairs with pitch_y, column offset with pitch_x
    const Vec3 a = element_position(1, 1, l);
    const Vec3 b = element_position(2, 1, l);
    const Vec3 c = element_position(1, 2, l);
    CHECK((a - b).y == doctest::Approx(0.07));
    CHECK((a - b).x == 0.0);
    CHECK((c - a).x == doctest::Approx(0.05));
    CHECK((c - a).y == 0.0);
}

TEST_CASE("positions are centered and point symmetric")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 12);
    std::uniform_real_distribution<double> pitch(0.001, 0.5);
    for (int trial = 0; trial < 200; ++trial)
    {
        const ArrayLayout l{dim(rng), dim(rng), pitch(rng), pitch(rng)};
        const auto all = element_positions(l);
        REQUIRE(all.size() == l.size());
        Vec3 sum;
        for (const auto &p : all)
            sum = sum + p;
        CHECK(std::abs(sum.x) < 1e-12);
        CHECK(std::abs(sum.y) < 1e-12);
        for (int r = 1; r <= l.n_rows; ++r)
            for (int c = 1; c <= l.n_cols; ++c)
                CHECK(element_position(r, c, l) == -element_position(l.n_rows + 1 - r, l.n_cols + 1 - c, l));
    }
}

TEST_CASE("element index and layout checks")
{
    const ArrayLayout l{2, 3, 0.05, 0.05};
    CHECK_CODE(element_position(0, 1, l), ErrorCode::bounds);
    CHECK_CODE(element_position(3, 1, l), ErrorCode::bounds);
    CHECK_CODE(element_position(1, 4, l), ErrorCode::bounds);
    CHECK_CODE((ArrayLayout{0, 3, 0.05, 0.05}.validate()), ErrorCode::invalid_parameter);
    CHECK_CODE((ArrayLayout{2, 3, -0.05, 0.05}.validate()), ErrorCode::invalid_parameter);
    CHECK_CODE((ArrayLayout{2, 3, 0.05, std::nan("")}.validate()), ErrorCode::invalid_parameter);
}

TEST_CASE("link geometry examples")
{
    const auto top = TerminalPosition::from_cartesian({0.0, 0.0, 2.0});
    const LinkGeometry a = link_geometry({0.0, 0.0, 0.0}, top);
    CHECK(a.distance == 2.0);
    CHECK(a.zenith == 0.0);

    const LinkGeometry b = link_geometry({0.0, 0.0, 0.0}, TerminalPosition::from_cartesian({2.0, 0.0, 2.0}));
    CHECK(b.distance == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(b.zenith == doctest::Approx(pi / 4).epsilon(1e-15));

    const auto below = TerminalPosition::from_cartesian({0.029, 0.0, -1.0});
    CHECK(below.side() == Side::transmit);
    const LinkGeometry c = link_geometry({0.029, 0.0, 0.0}, below);
    CHECK(c.distance == 1.0);
    CHECK(c.zenith == 0.0);
}

TEST_CASE("coincident terminal is degenerate")
{
    CHECK_CODE(link_geometry({0.1, 0.2, 0.0}, TerminalPosition::from_cartesian({0.1, 0.2, 0.0})),
               ErrorCode::degenerate_geometry);
}

TEST_CASE("spherical round trip over 0.1 m to 10 km")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i)
    {
        const double r = 0.1 * std::pow(1e5, u(rng));
        const Vec3 p = to_cartesian({r, pi * u(rng), 2.0 * pi * u(rng)});
        const Vec3 q = to_cartesian(to_spherical(p));
        worst = std::max(worst, (p - q).norm());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("spherical conventions")
{
    const Vec3 p = to_cartesian({2.0L, static_cast<long double>(pi / 2), static_cast<long double>(pi / 2)});
    CHECK(std::abs(p.x) < 1e-15);
    CHECK(p.y == doctest::Approx(2.0));
    CHECK(std::abs(p.z) < 1e-15);
    const Spherical s = to_spherical({0.0, -1.0, 0.0});
    CHECK(static_cast<double>(s.azimuth) == doctest::Approx(1.5 * pi));
}

TEST_CASE("terminal placement on a face")
{
    const auto t = TerminalPosition::on_face(Side::transmit, 2.0, deg(30.0), 0.0);
    CHECK(t.side() == Side::transmit);
    CHECK(t.cartesian().z == doctest::Approx(-2.0 * std::cos(deg(30.0))));
    CHECK(t.cartesian().x == doctest::Approx(1.0));
    CHECK(link_geometry({0.0, 0.0, 0.0}, t).zenith == doctest::Approx(deg(30.0)));

    const auto r = TerminalPosition::on_face(Side::reflect, 2.0, 0.0, 0.0);
    CHECK(r.side() == Side::reflect);
    CHECK(r.cartesian() == Vec3{0.0, 0.0, 2.0});

    CHECK_CODE(TerminalPosition::on_face(Side::reflect, 1.0, deg(95.0), 0.0), ErrorCode::invalid_parameter);
    CHECK_CODE(TerminalPosition::on_face(Side::reflect, -1.0, 0.0, 0.0), ErrorCode::invalid_parameter);
    CHECK_CODE(TerminalPosition::from_spherical(1.0, 4.0, 0.0), ErrorCode::invalid_parameter);
    CHECK_CODE(TerminalPosition::from_cartesian({std::nan(""), 0.0, 1.0}), ErrorCode::invalid_parameter);
}

TEST_CASE("terminal boresight points at the array center")
{
    const auto t = TerminalPosition::from_cartesian({0.0, 0.0, 3.0});
    CHECK(off_boresight_angle(t, {0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(off_boresight_angle(t, {3.0, 0.0, 0.0}) == doctest::Approx(pi / 4));
}

TEST_CASE("distance obeys the triangle inequality")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i)
    {
        const Vec3 e{u(rng), u(rng), 0.0};
        Vec3 a{u(rng), u(rng), u(rng)};
        Vec3 b{u(rng), u(rng), u(rng)};
        if (a.z == 0.0 || b.z == 0.0)
            continue;
        const auto ta = TerminalPosition::from_cartesian(a);
        const auto tb = TerminalPosition::from_cartesian(b);
        const double dea = link_geometry(e, ta).distance;
        const double deb = link_geometry(e, tb).distance;
        const double dab = (a - b).norm();
        CHECK(dea <= deb + dab + 1e-12);
        CHECK(deb <= dea + dab + 1e-12);
        CHECK(dab <= dea + deb + 1e-12);
    }
}
