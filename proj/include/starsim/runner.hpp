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
#ifndef STARSIM_RUNNER_HPP
#define STARSIM_RUNNER_HPP

#include "starsim/scenario_io.hpp"

#include <string>
#include <vector>

namespace starsim::run
{

using io::OptimizerSettings;
using geometry::Side;
using io::ScenarioFile;

// Steering target described by the optimizer settings of a scenario file.
beamform::SteeringTarget steering_target(const ScenarioFile &file, const OptimizerSettings &settings);

struct OptimizeReport
{
    io::Method method = io::Method::greedy;
    Side side = Side::transmit;
    double power_w = 0.0; // at the steering target, including phase jitter
    double bound_w = 0.0; // P_t / PL_min toward the same target
    double path_loss_db = 0.0;
    double min_path_loss_db = 0.0;
    int passes = 0;
    std::uint64_t evaluated = 0;
    std::vector<double> phases;                      // applied phases on `side`, rad
    std::optional<beamform::PhaseConfiguration> codes; // absent for continuous phases

    double ratio() const { return bound_w > 0.0 ? power_w / bound_w : 0.0; }
};

// Runs one optimizer. Greedy starts from the quantized conjugate solution;
// the untouched side keeps the codes already present in the file.
OptimizeReport optimize(const ScenarioFile &file, const OptimizerSettings &settings);

enum class SweepParam
{
    pa_ma,
    bias_v,
    zenith,
};

const char *to_string(SweepParam param);
std::optional<SweepParam> parse_sweep_param(std::string_view name);

struct SweepRow
{
    double value = 0.0;
    double power_w = 0.0;
    double bound_w = 0.0;
};

// Re-optimizes at each grid value. `zenith` moves the receiver of the
// optimizer side along its arc (degrees off the face normal) and aims at it.
std::vector<SweepRow> sweep(const ScenarioFile &file, SweepParam param, double from, double to, int steps,
                            const OptimizerSettings &settings);

// CSV with columns value,power_w,power_dbm,bound_w.
std::string format_sweep(std::span<const SweepRow> rows);

} // namespace starsim::run

#endif
