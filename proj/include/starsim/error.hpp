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
#ifndef STARSIM_ERROR_HPP
#define STARSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace starsim
{

// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode
{
    invalid_parameter = 1,
    parse = 2,
    io = 3,
    degenerate_geometry = 4,
    budget_exceeded = 5,
    configuration = 6,
    bounds = 7,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message)
{
    throw Error(code, message);
}

} // namespace starsim

#endif
