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
#ifndef STARSIM_GEOMETRY_HPP
#define STARSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace starsim::geometry
{

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
    friend bool operator==(const Vec3 &, const Vec3 &) = default;

    double norm() const { return std::hypot(x, y, z); }
    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
};

// Which face of the surface a terminal sees. The array lies in z = 0; the
// reflection face looks toward +z (where the transmitter sits), the
// transmission face toward -z.
enum class Side
{
    transmit,
    reflect,
};

const char *to_string(Side side);

// Uniform planar array. n_rows (N_x) elements are stacked along y, n_cols
// (N_y) along x, following the element coordinate formula
//   p_n = (delta_y * pitch_x, delta_x * pitch_y, 0)
//   delta_y = col - (N_y + 1)/2,  delta_x = (N_x + 1)/2 - row
// with 1-based row/col. The cross pairing of the column offset with pitch_x
// is kept verbatim.
struct ArrayLayout
{
    int n_rows = 1;
    int n_cols = 1;
    double pitch_x = 0.058;
    double pitch_y = 0.058;

    std::size_t size() const { return static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols); }
    void validate() const;

    friend bool operator==(const ArrayLayout &, const ArrayLayout &) = default;
};

// Position of element (row, col), both 1-based.
Vec3 element_position(int row, int col, const ArrayLayout &layout);

// All element positions, row-major: index n = (row-1)*n_cols + (col-1).
std::vector<Vec3> element_positions(const ArrayLayout &layout);

// Extended precision so a double Cartesian point survives the round trip
// through spherical coordinates unchanged.
struct Spherical
{
    long double range = 0.0L;   // m
    long double zenith = 0.0L;  // rad in [0, pi], measured from +z
    long double azimuth = 0.0L; // rad in [0, 2pi), measured from +x toward +y
};

Vec3 to_cartesian(const Spherical &s);
Spherical to_spherical(const Vec3 &p);

class TerminalPosition
{
public:
    TerminalPosition() = default;

    static TerminalPosition from_cartesian(const Vec3 &p);
    static TerminalPosition from_spherical(double range, double zenith, double azimuth);

    // Position seen from one face: zenith_from_normal is the angle off that
    // face's outward normal (0 = boresight of the face).
    static TerminalPosition on_face(Side side, double range, double zenith_from_normal, double azimuth);

    const Vec3 &cartesian() const { return cartesian_; }
    Spherical spherical() const { return to_spherical(cartesian_); }

    // Face the terminal is on; z == 0 counts as the reflection half-space.
    Side side() const { return cartesian_.z < 0.0 ? Side::transmit : Side::reflect; }

    friend bool operator==(const TerminalPosition &, const TerminalPosition &) = default;

private:
    explicit TerminalPosition(const Vec3 &p) : cartesian_(p) {}
    Vec3 cartesian_{};
};

struct LinkGeometry
{
    double distance = 0.0; // m
    double zenith = 0.0;   // rad, off the outward normal of the terminal's face
};

// Distance from an element to a terminal and the direction angle at the
// element. Throws Error(degenerate_geometry) if the two coincide.
LinkGeometry link_geometry(const Vec3 &element, const TerminalPosition &terminal);

// Angle at the terminal between its boresight (pointing at the array center)
// and the direction to a given element.
double off_boresight_angle(const TerminalPosition &terminal, const Vec3 &element);

} // namespace starsim::geometry

#endif
