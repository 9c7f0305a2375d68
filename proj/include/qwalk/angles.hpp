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

#include <numbers>

namespace qwalk {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle to (-pi, pi].
double wrap_signed(double angle);

/// Maps an angle to [0, 2pi).
double wrap_positive(double angle);

/// Length of the shorter arc between two angles, in [0, pi].
double circular_distance(double a, double b);

/// Counter-clockwise offset from `from` to `to`, in [0, 2pi).
double ccw_offset(double from, double to);

}  // namespace qwalk
