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

#include "starsim/error.hpp"

#include <numbers>
#include <string>

namespace starsim::geometry
{

namespace
{

// Angle between two vectors; atan2 form stays accurate near 0 and pi.
double angle_between(const Vec3 &a, const Vec3 &b)
{
    const Vec3 c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    return std::atan2(c.norm(), a.dot(b));
}

} // namespace

const char *to_string(Side side)
{
    return side == Side::transmit ? "transmit" : "reflect";
}

void ArrayLayout::validate() const
{
    if (n_rows < 1 || n_cols < 1)
        fail(ErrorCode::invalid_parameter, "array layout needs at least one row and one column");
    if (!(pitch_x > 0.0) || !(pitch_y > 0.0) || !std::isfinite(pitch_x) || !std::isfinite(pitch_y))
        fail(ErrorCode::invalid_parameter, "array pitch must be positive and finite");
}

Vec3 element_position(int row, int col, const ArrayLayout &layout)
{
    if (row < 1 || row > layout.n_rows || col < 1 || col > layout.n_cols)
        fail(ErrorCode::bounds, "element index (" + std::to_string(row) + ", " + std::to_string(col) +
                                    ") outside " + std::to_string(layout.n_rows) + "x" +
                                    std::to_string(layout.n_cols) + " layout");
    const double delta_y = col - (layout.n_cols + 1) / 2.0;
    const double delta_x = (layout.n_rows + 1) / 2.0 - row;
    return {delta_y * layout.pitch_x, delta_x * layout.pitch_y, 0.0};
}

std::vector<Vec3> element_positions(const ArrayLayout &layout)
{
    layout.validate();
    std::vector<Vec3> out;
    out.reserve(layout.size());
    for (int row = 1; row <= layout.n_rows; ++row)
        for (int col = 1; col <= layout.n_cols; ++col)
            out.push_back(element_position(row, col, layout));
    return out;
}

Vec3 to_cartesian(const Spherical &s)
{
    const long double r = s.range;
    const long double st = std::sin(s.zenith);
    const long double ct = std::cos(s.zenith);
    const long double sp = std::sin(s.azimuth);
    const long double cp = std::cos(s.azimuth);
    return {static_cast<double>(r * st * cp), static_cast<double>(r * st * sp), static_cast<double>(r * ct)};
}

Spherical to_spherical(const Vec3 &p)
{
    const long double x = p.x, y = p.y, z = p.z;
    const long double rho = std::hypot(x, y);
    Spherical s;
    s.range = std::hypot(rho, z);
    if (s.range == 0.0L)
        return s;
    s.zenith = std::atan2(rho, z);
    s.azimuth = std::atan2(y, x);
    if (s.azimuth < 0.0L)
        s.azimuth += 2.0L * std::numbers::pi_v<long double>;
    if (s.azimuth >= 2.0L * std::numbers::pi_v<long double>)
        s.azimuth = 0.0L;
    return s;
}

TerminalPosition TerminalPosition::from_cartesian(const Vec3 &p)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        fail(ErrorCode::invalid_parameter, "terminal position must be finite");
    return TerminalPosition(p);
}

TerminalPosition TerminalPosition::from_spherical(double range, double zenith, double azimuth)
{
    if (!(range >= 0.0) || !std::isfinite(range))
        fail(ErrorCode::invalid_parameter, "terminal range must be >= 0");
    if (!(zenith >= 0.0 && zenith <= std::numbers::pi))
        fail(ErrorCode::invalid_parameter, "terminal zenith must lie in [0, pi]");
    if (!std::isfinite(azimuth))
        fail(ErrorCode::invalid_parameter, "terminal azimuth must be finite");
    return TerminalPosition(to_cartesian({range, zenith, azimuth}));
}

TerminalPosition TerminalPosition::on_face(Side side, double range, double zenith_from_normal, double azimuth)
{
    if (!(zenith_from_normal >= 0.0 && zenith_from_normal <= std::numbers::pi / 2))
        fail(ErrorCode::invalid_parameter, "zenith off the face normal must lie in [0, pi/2]");
    if (!(range >= 0.0) || !std::isfinite(range))
        fail(ErrorCode::invalid_parameter, "terminal range must be >= 0");
    if (!std::isfinite(azimuth))
        fail(ErrorCode::invalid_parameter, "terminal azimuth must be finite");
    const long double off = zenith_from_normal;
    const long double zenith = side == Side::reflect ? off : std::numbers::pi_v<long double> - off;
    return TerminalPosition(to_cartesian({range, zenith, azimuth}));
}

LinkGeometry link_geometry(const Vec3 &element, const TerminalPosition &terminal)
{
    const Vec3 d = terminal.cartesian() - element;
    const double dist = d.norm();
    if (!(dist > 0.0))
        fail(ErrorCode::degenerate_geometry, "terminal coincides with an element");
    const Vec3 normal = terminal.side() == Side::transmit ? Vec3{0.0, 0.0, -1.0} : Vec3{0.0, 0.0, 1.0};
    return {dist, angle_between(normal, d)};
}

double off_boresight_angle(const TerminalPosition &terminal, const Vec3 &element)
{
    const Vec3 to_center = -terminal.cartesian();
    const Vec3 to_element = element - terminal.cartesian();
    if (!(to_center.norm() > 0.0) || !(to_element.norm() > 0.0))
        fail(ErrorCode::degenerate_geometry, "terminal sits on the array");
    return angle_between(to_center, to_element);
}

} // namespace starsim::geometry
