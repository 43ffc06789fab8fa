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
#include "starsim/link.hpp"

#include "starsim/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace starsim::link
{

using std::numbers::pi;

namespace
{

// Neumaier summation of one component.
struct CompensatedAccumulator
{
    double sum = 0.0;
    double carry = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

void check_states(const Scenario &scenario, std::span<const ElementState> states)
{
    if (states.size() != scenario.layout.size())
        fail(ErrorCode::configuration, "element state count " + std::to_string(states.size()) +
                                           " does not match array size " +
                                           std::to_string(scenario.layout.size()));
}

void check_receiver_side(const Terminal &receiver, Side side)
{
    if (receiver.position.side() != side)
        fail(ErrorCode::configuration, std::string("receiver for the ") + geometry::to_string(side) +
                                           " path lies in the wrong half-space");
}

} // namespace

void Scenario::validate() const
{
    layout.validate();
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        fail(ErrorCode::invalid_parameter, "carrier frequency must be positive");
    if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w))
        fail(ErrorCode::invalid_parameter, "transmit power must be positive");
    if (!(noise_t_w > 0.0) || !(noise_r_w > 0.0))
        fail(ErrorCode::invalid_parameter, "noise powers must be positive");
    tx.pattern.validate();
    rx_t.pattern.validate();
    rx_r.pattern.validate();
    element_pattern.validate();
    if (!(tx.position.cartesian().z > 0.0))
        fail(ErrorCode::configuration, "transmitter must lie in the reflection half-space (z > 0)");
    if (!(rx_t.position.cartesian().z < 0.0))
        fail(ErrorCode::configuration, "transmission receiver must lie in the z < 0 half-space");
    if (!(rx_r.position.cartesian().z > 0.0))
        fail(ErrorCode::configuration, "reflection receiver must lie in the z > 0 half-space");
}

std::vector<ElementState> uniform_states(const Scenario &scenario, const ElementState &state)
{
    return std::vector<ElementState>(scenario.layout.size(), state);
}

std::complex<double> compensated_sum(std::span<const std::complex<double>> values)
{
    CompensatedAccumulator re, im;
    for (const auto &v : values)
    {
        re.add(v.real());
        im.add(v.imag());
    }
    return {re.value(), im.value()};
}

double PathTerms::power(std::span<const double> phases) const
{
    if (phases.size() != terms_.size())
        fail(ErrorCode::configuration, "phase count does not match element count");
    CompensatedAccumulator re, im;
    for (std::size_t n = 0; n < terms_.size(); ++n)
    {
        const auto v = terms_[n] * std::polar(1.0, phases[n]);
        re.add(v.real());
        im.add(v.imag());
    }
    return prefactor_ * std::norm(std::complex<double>(re.value(), im.value()));
}

std::vector<std::complex<double>> PathTerms::phasors(int bits)
{
    const auto table = element::codebook(bits);
    std::vector<std::complex<double>> out(table.size());
    for (std::size_t c = 0; c < table.size(); ++c)
        out[c] = std::polar(1.0, table[c]);
    return out;
}

double PathTerms::power_codes(std::span<const int> codes, int bits) const
{
    const auto table = phasors(bits);
    return power_codes(codes, table);
}

double PathTerms::power_codes(std::span<const int> codes, std::span<const std::complex<double>> phasors) const
{
    if (codes.size() != terms_.size())
        fail(ErrorCode::configuration, "code count does not match element count");
    CompensatedAccumulator re, im;
    for (std::size_t n = 0; n < terms_.size(); ++n)
    {
        const int c = codes[n];
        if (c < 0 || c >= static_cast<int>(phasors.size()))
            fail(ErrorCode::invalid_parameter, "phase code outside codebook");
        const auto v = terms_[n] * phasors[c];
        re.add(v.real());
        im.add(v.imag());
    }
    return prefactor_ * std::norm(std::complex<double>(re.value(), im.value()));
}

double PathTerms::coherent_power() const
{
    CompensatedAccumulator acc;
    for (const auto &t : terms_)
        acc.add(std::abs(t));
    const double s = acc.value();
    return prefactor_ * s * s;
}

std::vector<double> PathTerms::aligning_phases() const
{
    std::vector<double> out(terms_.size());
    for (std::size_t n = 0; n < terms_.size(); ++n)
        out[n] = channel::wrap_phase(-std::arg(terms_[n]));
    return out;
}

std::vector<double> path_lengths(const Scenario &scenario, const TerminalPosition &receiver)
{
    const auto positions = geometry::element_positions(scenario.layout);
    std::vector<double> out(positions.size());
    for (std::size_t n = 0; n < positions.size(); ++n)
        out[n] = geometry::link_geometry(positions[n], scenario.tx.position).distance +
                 geometry::link_geometry(positions[n], receiver).distance;
    return out;
}

PathTerms path_terms(const Scenario &scenario, std::span<const ElementState> states, Side side,
                     const Terminal &receiver)
{
    check_states(scenario, states);
    check_receiver_side(receiver, side);
    const double lambda = scenario.wavelength();
    const auto positions = geometry::element_positions(scenario.layout);

    std::vector<std::complex<double>> terms(positions.size());
    for (std::size_t n = 0; n < positions.size(); ++n)
    {
        const auto &p = positions[n];
        const auto in = geometry::link_geometry(p, scenario.tx.position);
        const auto out = geometry::link_geometry(p, receiver.position);
        const double g_tx = scenario.tx.pattern.gain(geometry::off_boresight_angle(scenario.tx.position, p));
        const double g_rx = receiver.pattern.gain(geometry::off_boresight_angle(receiver.position, p));
        const auto rcs = element::element_rcs(states[n], in.zenith, out.zenith, lambda, scenario.element_pattern,
                                              side, scenario.calibration);
        const double amplitude = std::sqrt(g_tx * g_rx) / (in.distance * out.distance) * rcs.sigma;
        const double phase = channel::cycles_to_phase(-(in.distance + out.distance) / lambda);
        terms[n] = std::polar(amplitude, phase);
    }
    return PathTerms(scenario.tx_power_w / (16.0 * pi * pi), std::move(terms));
}

PathTerms path_terms(const Scenario &scenario, std::span<const ElementState> states, Side side)
{
    return path_terms(scenario, states, side, scenario.receiver(side));
}

std::vector<double> applied_phases(std::span<const ElementState> states, Side side)
{
    std::vector<double> out(states.size());
    for (std::size_t n = 0; n < states.size(); ++n)
        out[n] = element::codebook_phase(states[n].code(side), states[n].bits) + states[n].phase_error(side);
    return out;
}

double received_power(const Scenario &scenario, std::span<const ElementState> states, Side side)
{
    const auto terms = path_terms(scenario, states, side);
    return terms.power(applied_phases(states, side));
}

double received_power(const Scenario &scenario, std::span<const ElementState> states, Side side,
                      std::span<const double> phases)
{
    return path_terms(scenario, states, side).power(phases);
}

double min_path_loss(const Scenario &scenario, std::span<const ElementState> states, Side side)
{
    const double coherent = path_terms(scenario, states, side).coherent_power();
    if (coherent == 0.0)
        return std::numeric_limits<double>::infinity();
    return scenario.tx_power_w / coherent;
}

double snr(double received_w, double noise_w)
{
    if (!(noise_w > 0.0))
        fail(ErrorCode::invalid_parameter, "noise power must be positive");
    return received_w / noise_w;
}

LinkResult link_budget(const Scenario &scenario, std::span<const ElementState> states)
{
    scenario.validate();
    check_states(scenario, states);
    LinkResult r;
    const auto path_loss = [&](double p)
    { return p > 0.0 ? scenario.tx_power_w / p : std::numeric_limits<double>::infinity(); };

    r.p_rt = received_power(scenario, states, Side::transmit);
    r.p_rr = received_power(scenario, states, Side::reflect);
    r.pl_t = path_loss(r.p_rt);
    r.pl_r = path_loss(r.p_rr);
    r.pl_t_min = min_path_loss(scenario, states, Side::transmit);
    r.pl_r_min = min_path_loss(scenario, states, Side::reflect);
    r.snr_t = snr(r.p_rt, scenario.noise_t_w);
    r.snr_r = snr(r.p_rr, scenario.noise_r_w);
    for (const auto &s : states)
        r.split_clamped |= element::split_coefficients(s.bias_v, s.efficiency, scenario.calibration).clamped;
    return r;
}

} // namespace starsim::link
