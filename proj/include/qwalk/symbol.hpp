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

#include "qwalk/coin.hpp"

namespace qwalk {

/// Band label j of the symbol eigenpairs; kFirst carries the sign
/// (-1)^{j-1} = +1.
enum class Band { kFirst = 1, kSecond = 2 };

inline constexpr std::array<Band, 2> kBands{Band::kFirst, Band::kSecond};

/// (-1)^{j-1}
inline double band_sign(Band j) { return j == Band::kFirst ? 1.0 : -1.0; }

inline int band_index(Band j) { return j == Band::kFirst ? 0 : 1; }

/// tau(k) = a cos(k + alpha - delta/2), eta = sqrt(1 - tau^2),
/// sigma_fn(k) = a sin(k + alpha - delta/2), theta_star = arccos(a).
struct AuxFunctions {
  double tau = 0.0;
  double eta = 1.0;
  double sigma_fn = 0.0;
  double theta_star = 0.0;
};

AuxFunctions aux_functions(const CoinParams& p, double k);

/// Fourier symbol diag(e^{ik}, e^{-ik}) C of the constant-coin walk.
Matrix2c symbol_at(const CoinParams& p, double k);

struct SymbolEigen {
  double k = 0.0;
  std::array<Complex, 2> lambda;
  std::array<Spinor, 2> u;
  std::array<double, 2> v{};
};

/// Closed-form eigenvalues, eigenvectors and group velocities. The
/// eigenvector phase is the one of the analytic formula (first component
/// proportional to i b e^{i(k + beta - delta/2)}), never renormalized.
SymbolEigen eigenpairs(const CoinParams& p, double k);

/// d/dk of the eigenvectors returned by eigenpairs, in closed form.
std::array<Spinor, 2> eigenvector_derivatives(const CoinParams& p, double k);

/// v_j(k) = i lambda_j'(k) / lambda_j(k).
double velocity(const CoinParams& p, double k, Band j);

/// v_j'(k); zero in the a = 0 and a = 1 cases.
double velocity_derivative(const CoinParams& p, double k, Band j);

/// sum_j v_j(k) |u_j><u_j|
Matrix2c V_hat(const CoinParams& p, double k);

/// -sum_j v_j'(k) |u_j><u_j|
Matrix2c H_hat(const CoinParams& p, double k);

}  // namespace qwalk
