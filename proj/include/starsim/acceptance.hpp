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
#ifndef STARSIM_ACCEPTANCE_HPP
#define STARSIM_ACCEPTANCE_HPP

#include "starsim/element.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace starsim::acceptance
{

struct Criterion
{
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail; // deterministic text, no timings
    double seconds = 0.0;
    double limit_seconds = 0.0; // 0 = no runtime limit
};

struct Options
{
    std::uint64_t seed = 1;
    // Calibration checked by the calibration criterion; defaults when empty.
    std::optional<element::CalibrationCurves> calibration;
    // Worker count for the second pass of the reproducibility criterion.
    int alternate_threads = 4;
};

struct Report
{
    std::uint64_t seed = 1;
    std::vector<Criterion> criteria;

    bool all_passed() const;
    // One line per criterion plus a summary. Byte-stable for a given seed.
    std::string text() const;
    std::string timings() const;
};

// Runs criteria 1-9 at the current thread count, repeats them at
// Options::alternate_threads and compares the reports (criterion 10).
Report run(const Options &options = {});

// Criteria 1-9 only, at the current thread count.
Report run_core(const Options &options = {});

} // namespace starsim::acceptance

#endif
