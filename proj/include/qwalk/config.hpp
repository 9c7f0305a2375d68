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

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "qwalk/coin.hpp"

namespace qwalk {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits, the precision of every analysis output.
/// Configs keep full round-trip precision: a coin rounded to 12 digits can
/// miss the 1e-12 unitarity check.
double round12(double v);

/// Formats with 12 significant digits ("%.12g").
std::string format12(double v);

/// A validated coin-field description. `body` holds the normalized JSON with
/// defaults filled in and angles in radians.
///
///   {"family": "two_phase", "sigma_plus": s, "sigma_minus": s,
///    "defect": false}
///   {"family": "split_step", "theta_minus": t, "theta_plus": t, "scale": 3}
///   {"family": "constant", "params": [a, alpha, beta, delta]}
///   {"family": "constant", "matrix": M}
///   {"family": "table", "sites": [{"x": 0, "matrix": M}, ...],
///    "left": M, "right": M, "kappa": 1, "eps": 1}
///
/// A matrix M is [[c00, c01], [c10, c11]] with each entry [re, im].
struct CoinSpec {
  Json body;

  friend bool operator==(const CoinSpec&, const CoinSpec&) = default;
};

/// Validates a coin-field JSON object. Unknown fields are rejected. Angle
/// fields are multiplied by `angle_scale` (pi / 180 under --degrees).
CoinSpec parse_coin_spec(const Json& j, double angle_scale = 1.0);
CoinSpec load_coin_spec(const std::string& path, double angle_scale = 1.0);

CoinField build_field(const CoinSpec& spec);

Json matrix_to_json(const Matrix2c& m);
Matrix2c matrix_from_json(const Json& j);

/// Parses "a,alpha,beta,delta".
std::array<double, 4> parse_coin_params(const std::string& text,
                                        double angle_scale = 1.0);
CoinParams to_params(const std::array<double, 4>& v);

/// Everything an invocation needs. Angles are stored in radians.
struct RunConfig {
  std::string subcommand;
  std::optional<CoinSpec> coin;
  std::optional<std::array<double, 4>> coin_params;
  std::optional<double> theta;
  int sites = 256;
  int grid = 256;
  long steps = 100;
  int bins = 64;
  int samples = 256;
  long range = 1000;
  std::string initial = "0:1,0";
  double gap_margin = 0.05;
  double loc_frac = 0.125;
  double tolerance = 1e-8;
  std::string out;  // empty means stdout
  std::string format;  // json | csv | text; empty means the subcommand default

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

Json to_json(const RunConfig& c);
/// Rejects unknown fields and a schema other than 1.
RunConfig run_config_from_json(const Json& j);

}  // namespace qwalk
