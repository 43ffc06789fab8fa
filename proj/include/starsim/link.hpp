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
#ifndef STARSIM_LINK_HPP
#define STARSIM_LINK_HPP

#include "starsim/channel.hpp"
#include "starsim/element.hpp"
#include "starsim/geometry.hpp"

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace starsim::link
{

using element::ElementState;
using geometry::Side;
using geometry::TerminalPosition;

struct Terminal
{
    TerminalPosition position;
    channel::AntennaPattern pattern;

    friend bool operator==(const Terminal &, const Terminal &) = default;
};

struct Scenario
{
    geometry::ArrayLayout layout;
    double carrier_hz = 2.6e9;
    Terminal tx;
    Terminal rx_t; // transmission side, z < 0
    Terminal rx_r; // reflection side, z > 0
    channel::AntennaPattern element_pattern = channel::AntennaPattern::cosine_power_normalized(1.0);
    double tx_power_w = 1.0;
    double noise_t_w = 1e-12;
    double noise_r_w = 1e-12;
    element::CalibrationCurves calibration = element::CalibrationCurves::defaults();

    double wavelength() const { return channel::wavelength(carrier_hz); }
    const Terminal &receiver(Side side) const { return side == Side::transmit ? rx_t : rx_r; }
    double noise_power(Side side) const { return side == Side::transmit ? noise_t_w : noise_r_w; }

    // Checks every scenario invariant, including the half-space convention.
    void validate() const;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

// Uniform states for every element of a scenario.
std::vector<ElementState> uniform_states(const Scenario &scenario, const ElementState &state);

// Per-element coefficients of one receive path, without the controlled phase:
//   term_n = sqrt(G_t G_r) / (r_t r_r) * sigma_n * exp(-j 2pi (r_t + r_r) / lambda)
// The amplifier gain lives inside sigma_n only.
// Received power for controlled phases phi_n is
//   P = P_t / (16 pi^2) * |sum_n term_n exp(j phi_n)|^2.
class PathTerms
{
public:
    PathTerms() = default;
    PathTerms(double prefactor, std::vector<std::complex<double>> terms)
        : prefactor_(prefactor), terms_(std::move(terms)) {}

    double prefactor() const { return prefactor_; }
    std::span<const std::complex<double>> terms() const { return terms_; }
    std::vector<std::complex<double>> &mutable_terms() { return terms_; }
    std::size_t size() const { return terms_.size(); }

    double power(std::span<const double> phases) const;
    double power_codes(std::span<const int> codes, int bits) const;
    // Same evaluation with a precomputed codebook phasor table.
    double power_codes(std::span<const int> codes, std::span<const std::complex<double>> phasors) const;

    static std::vector<std::complex<double>> phasors(int bits);

    // P_t / PL_min: all terms phase aligned.
    double coherent_power() const;
    // Phases that align every term (conjugate of the propagation phase).
    std::vector<double> aligning_phases() const;

private:
    double prefactor_ = 0.0;
    std::vector<std::complex<double>> terms_;
};

// Compensated complex sum in fixed index order.
std::complex<double> compensated_sum(std::span<const std::complex<double>> values);

PathTerms path_terms(const Scenario &scenario, std::span<const ElementState> states, Side side);
PathTerms path_terms(const Scenario &scenario, std::span<const ElementState> states, Side side,
                     const Terminal &receiver);

// Total propagation path TX -> element n -> receiver, metres.
std::vector<double> path_lengths(const Scenario &scenario, const TerminalPosition &receiver);

// Applied phase of each element on one side: codebook phase + phase error.
std::vector<double> applied_phases(std::span<const ElementState> states, Side side);

double received_power(const Scenario &scenario, std::span<const ElementState> states, Side side);
double received_power(const Scenario &scenario, std::span<const ElementState> states, Side side,
                      std::span<const double> phases);

// 16 pi^2 / (sum_n |term_n|)^2; +infinity when no element
// contributes (e.g. grazing geometry or zero split).
double min_path_loss(const Scenario &scenario, std::span<const ElementState> states, Side side);

inline bool is_unreachable(double path_loss) { return path_loss == std::numeric_limits<double>::infinity(); }

double snr(double received_w, double noise_w);

struct LinkResult
{
    double p_rt = 0.0;
    double p_rr = 0.0;
    double pl_t = 0.0; // P_t / p_rt
    double pl_r = 0.0;
    double pl_t_min = 0.0;
    double pl_r_min = 0.0;
    double snr_t = 0.0;
    double snr_r = 0.0;
    bool split_clamped = false;
};

LinkResult link_budget(const Scenario &scenario, std::span<const ElementState> states);

} // namespace starsim::link

#endif
