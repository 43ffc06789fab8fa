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
// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include "starsim/acceptance.hpp"
#include "starsim/parallel.hpp"

#include <cstdio>
#include <string>

int main()
{
    using namespace starsim;

    set_thread_count(1);
    acceptance::Options options;
    options.seed = 1;
    options.alternate_threads = 4;
    const auto report = acceptance::run(options);

    // A second full run at another worker count must print the same bytes.
    set_thread_count(3);
    options.alternate_threads = 2;
    const auto again = acceptance::run(options);
    set_thread_count(1);

    std::fputs(report.text().c_str(), stdout);
    const bool identical = report.text() == again.text();
    std::printf("%s validate reruns at 1/4 and 3/2 threads: %s\n", identical ? "PASS" : "FAIL",
                identical ? "byte-identical" : "reports differ");
    std::fputs(report.timings().c_str(), stdout);

    return report.all_passed() && identical ? 0 : 1;
}
