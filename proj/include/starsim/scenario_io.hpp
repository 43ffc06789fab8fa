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
#ifndef STARSIM_SCENARIO_IO_HPP
#define STARSIM_SCENARIO_IO_HPP

#include "starsim/beamform.hpp"
#include "starsim/link.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace starsim::io
{

using beamform::PatternSample;
using beamform::PhaseConfiguration;
using element::ElementState;
using geometry::Side;
using link::Scenario;

// Environment variable naming a calibration file used when a scenario does not
// carry its own tables.
inline constexpr const char *calibration_env = "STARSIM_CALIBRATION";

enum class Method
{
    conjugate,
    quantized,
    greedy,
    exhaustive,
};

const char *to_string(Method method);
std::optional<Method> parse_method(std::string_view name);
std::optional<Side> parse_side(std::string_view name);

struct OptimizerSettings
{
    Method method = Method::greedy;
    Side side = Side::transmit;
    // Steering direction off the face normal. Without it the optimizer aims
    // at the scenario's receiver on `side`.
    std::optional<double> zenith_deg;
    double azimuth_deg = 0.0;
    int max_passes = 50;
    int budget_bits = beamform::default_exhaustive_budget_bits;

    friend bool operator==(const OptimizerSettings &, const OptimizerSettings &) = default;
};

struct PatternSettings
{
    Side side = Side::transmit;
    double from_deg = -89.5;
    double to_deg = 89.5;
    double step_deg = 0.5;
    double azimuth_deg = 0.0;

    friend bool operator==(const PatternSettings &, const PatternSettings &) = default;
};

// Everything a scenario file declares.
struct ScenarioFile
{
    Scenario scenario;
    ElementState element;    // applied to every element
    double jitter_deg = 0.0; // hardware phase error bound
    std::optional<PhaseConfiguration> configuration;
    OptimizerSettings optimizer;
    PatternSettings pattern;
    std::uint64_t seed = 1;

    // Per-element states: defaults, then configured codes, then seeded
    // phase jitter.
    std::vector<ElementState> states() const;

    friend bool operator==(const ScenarioFile &, const ScenarioFile &) = default;
};

// Strict parser: unknown keys, missing keys, unit or range violations and
// half-space violations raise Error(parse) naming the source, line and key.
ScenarioFile parse_scenario(const std::filesystem::path &path);
ScenarioFile parse_scenario_text(std::string_view text, std::string_view source = "<string>");

// Emits a document that parses back to an identical ScenarioFile.
std::string serialize_scenario(const ScenarioFile &file);

element::CalibrationCurves load_calibration(const std::filesystem::path &path);
element::CalibrationCurves parse_calibration_text(std::string_view text, std::string_view source = "<string>");

// Calibration named by $STARSIM_CALIBRATION, or the embedded defaults.
element::CalibrationCurves default_calibration();

enum class ExportFormat
{
    csv,
    json,
};

std::optional<ExportFormat> parse_format(std::string_view name);

// CSV: header `zenith_deg,azimuth_deg,power_w,power_db_rel`, one row per
// sample, 9 significant digits. JSON: {"samples": [{...same fields...}]}.
std::string format_pattern(std::span<const PatternSample> samples, ExportFormat format);
void export_pattern(std::span<const PatternSample> samples, const std::filesystem::path &path,
                    ExportFormat format);
std::vector<PatternSample> read_pattern(const std::filesystem::path &path, ExportFormat format);

// 9-significant-digit rendering used by every text export.
std::string format_number(double value);

} // namespace starsim::io

#endif
