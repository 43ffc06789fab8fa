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
#include "starsim/parallel.hpp"

#include <atomic>

namespace starsim
{

namespace
{
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n)
{
    g_threads.store(n == 0 ? 1u : n);
}

unsigned thread_count()
{
    return g_threads.load();
}

} // namespace starsim
