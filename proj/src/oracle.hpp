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
#ifndef STARSIM_ORACLE_HPP
#define STARSIM_ORACLE_HPP

#include "starsim/link.hpp"

#include <span>

namespace starsim::oracle
{

// Direct term-by-term evaluation of the amplitude path
//   y = sqrt(P_t) sum_n f_n Gamma_n g_n
// in long double. f_n and g_n are free-space hops whose element-side
// aperture follows the element gain pattern; Gamma_n = sqrt(eta G_n) e^{j phi}.
// Shares nothing with the link module beyond the calibration lookups.
long double received_power(const link::Scenario &scenario, std::span<const element::ElementState> states,
                           geometry::Side side);

} // namespace starsim::oracle

#endif
