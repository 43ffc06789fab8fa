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
#ifndef STARSIM_BEAMFORM_HPP
#define STARSIM_BEAMFORM_HPP

#include "starsim/link.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace starsim::beamform
{

using element::ElementState;
using geometry::Side;
using link::Scenario;

// Array-wide discrete phase assignment. Transmission and reflection codes are
// independent per element.
struct PhaseConfiguration
{
    std::vector<int> codes_t;
    std::vector<int> codes_r;
    int bits = 1;

    static PhaseConfiguration zeros(std::size_t n, int bits);

    std::vector<int> &codes(Side side) { return side == Side::transmit ? codes_t : codes_r; }
    const std::vector<int> &codes(Side side) const { return side == Side::transmit ? codes_t : codes_r; }

    void validate(std::size_t n) const;

    friend bool operator==(const PhaseConfiguration &, const PhaseConfiguration &) = default;
};

// Writes the configuration's codes and resolution into a copy of the states.
std::vector<ElementState> apply(const PhaseConfiguration &config, std::span<const ElementState> states);

// Reads the codes back out of element states (all states must share bits).
PhaseConfiguration configuration_of(std::span<const ElementState> states);

// Where to steer: a direction off the chosen face's normal at the scenario's
// receiver range on that side, or an explicit receiver position.
struct SteeringTarget
{
    Side side = Side::transmit;
    double zenith = 0.0;  // rad off the face normal, [0, pi/2)
    double azimuth = 0.0; // rad
    std::optional<geometry::TerminalPosition> position;

    static SteeringTarget toward(Side side, double zenith, double azimuth);
    static SteeringTarget at(const geometry::TerminalPosition &position);
};

// Receiver (position + pattern) that the target resolves to.
link::Terminal target_receiver(const Scenario &scenario, const SteeringTarget &target);

// Path terms toward the steering target.
link::PathTerms target_terms(const Scenario &scenario, std::span<const ElementState> states,
                             const SteeringTarget &target);

// Continuous conjugate phases phi_n = 2pi (r_t + r_r) / lambda mod 2pi.
std::vector<double> conjugate_phases(const Scenario &scenario, const SteeringTarget &target);

// Nearest-codebook quantization of the conjugate phases, with a search over
// the 2^m global codebook offsets. The all-zero configuration is scored too
// and wins if it is strictly better. The other side's codes come from base.
PhaseConfiguration quantized_conjugate(const Scenario &scenario, std::span<const ElementState> states,
                                       const SteeringTarget &target, int bits,
                                       const PhaseConfiguration *base = nullptr);

// Objective over the target side's codes; must be deterministic.
using PowerObjective = std::function<double(std::span<const int> codes)>;

struct GreedyResult
{
    PhaseConfiguration configuration;
    double power = 0.0;
    double initial_power = 0.0;
    int passes = 0;
    int accepted_steps = 0;
    std::vector<double> step_powers; // objective after each accepted step
};

// Coordinate ascent: sweep elements in ascending index order, try every code
// for the current element and keep the best (ties keep the incumbent). Stops
// after a pass without changes or after max_passes.
GreedyResult greedy_optimize(const Scenario &scenario, std::span<const ElementState> states,
                             const SteeringTarget &target, int bits, const PhaseConfiguration &initial,
                             int max_passes);

// Same search against an externally supplied objective (for example measured
// power). initial must already hold codes for `side`.
GreedyResult greedy_optimize(const PowerObjective &objective, Side side, int bits,
                             const PhaseConfiguration &initial, int max_passes);

struct ExhaustiveResult
{
    PhaseConfiguration configuration;
    double power = 0.0;
    std::uint64_t evaluated = 0;
};

inline constexpr int default_exhaustive_budget_bits = 20;

// Global optimum over all 2^(N m) codes of the target side; ties resolve to
// the lexicographically smallest code vector. Throws
// Error(budget_exceeded) when N*m > budget_bits.
ExhaustiveResult exhaustive_search(const Scenario &scenario, std::span<const ElementState> states,
                                   const SteeringTarget &target, int bits,
                                   const PhaseConfiguration *base = nullptr,
                                   int budget_bits = default_exhaustive_budget_bits);

struct PatternSample
{
    double zenith_deg = 0.0;
    double azimuth_deg = 0.0;
    double power_w = 0.0;
    double power_db_rel = 0.0;

    friend bool operator==(const PatternSample &, const PatternSample &) = default;
};

// Moves the receiver of `side` along a constant-range arc and records the
// received power for the fixed element phases. Signed zenith: negative values
// are taken at azimuth + 180 deg so a grid through 0 describes one planar cut.
std::vector<PatternSample> pattern_sweep(const Scenario &scenario, std::span<const ElementState> states,
                                         std::span<const double> phases, Side side,
                                         std::span<const double> zenith_grid_deg, double azimuth_deg);

std::vector<PatternSample> pattern_sweep(const Scenario &scenario, std::span<const ElementState> states,
                                         Side side, std::span<const double> zenith_grid_deg, double azimuth_deg);

// Index of the sweep maximum, optionally restricted to a zenith window.
std::size_t peak_index(std::span<const PatternSample> samples);
std::size_t peak_index(std::span<const PatternSample> samples, double zenith_lo_deg, double zenith_hi_deg);

// Full width between the -3 dB crossings around the peak, interpolated
// linearly in dB. Returns nullopt when a crossing falls outside the grid.
std::optional<double> half_power_beamwidth(std::span<const PatternSample> samples);

std::vector<double> uniform_grid(double from_deg, double to_deg, double step_deg);

} // namespace starsim::beamform

#endif
