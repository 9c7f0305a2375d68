// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>

#include "qwalk/config.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitValidation = 2;

/// Parses "1", "-0.5", "i", "0.5-2i", "1e-3+4e-1i".
Complex parse_complex(const std::string& text);

/// Parses "x:c0,c1" into a delta state at x with spinor (c0, c1) scaled to
/// unit norm.
WalkState parse_initial(const std::string& text);

/// Runs one validated configuration, writing to c.out or to `out`.
/// Returns the exit code; throws ValidationError or NumericalError.
int execute(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command line entry point. Never throws.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qwalk::cli
