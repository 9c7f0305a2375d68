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

#include "qwalk/symbol.hpp"

#include <cmath>

namespace qwalk {
namespace {

// Splits eta +- sigma_fn so that neither factor is formed by cancellation:
// (eta + s sigma)(eta - s sigma) = b^2.
struct Factors {
  double p;  // eta + s * sigma_fn
  double q;  // eta - s * sigma_fn
};

Factors split_factors(const CoinParams& p, const AuxFunctions& aux, double s) {
  const double plus = aux.eta + s * aux.sigma_fn;
  const double minus = aux.eta - s * aux.sigma_fn;
  const double b2 = p.b * p.b;
  if (plus >= minus) return {plus, b2 / plus};
  return {b2 / minus, minus};
}

}  // namespace

AuxFunctions aux_functions(const CoinParams& p, double k) {
  const double psi = k + p.alpha - 0.5 * p.delta;
  AuxFunctions aux;
  aux.tau = p.a * std::cos(psi);
  aux.sigma_fn = p.a * std::sin(psi);
  aux.eta = std::sqrt(std::max(0.0, 1.0 - aux.tau * aux.tau));
  aux.theta_star = std::acos(std::min(1.0, p.a));
  return aux;
}

Matrix2c symbol_at(const CoinParams& p, double k) {
  Matrix2c shift = Matrix2c::Zero();
  shift(0, 0) = std::polar(1.0, k);
  shift(1, 1) = std::polar(1.0, -k);
  return shift * reconstruct(p).matrix();
}

SymbolEigen eigenpairs(const CoinParams& p, double k) {
  SymbolEigen e;
  e.k = k;
  const CoinCase kind = coin_case(p);
  if (kind == CoinCase::kDiagonal) {
    e.lambda[0] = std::polar(1.0, k + p.alpha);
    e.lambda[1] = std::polar(1.0, -(k + p.alpha - p.delta));
    e.u[0] = Spinor(1.0, 0.0);
    e.u[1] = Spinor(0.0, 1.0);
    e.v = {-1.0, 1.0};
    return e;
  }
  const AuxFunctions aux = aux_functions(p, k);
  const Complex half_det = std::polar(1.0, 0.5 * p.delta);
  const Complex b_phase = std::polar(1.0, k + p.beta - 0.5 * p.delta);
  for (Band j : kBands) {
    const int i = band_index(j);
    const double s = band_sign(j);
    if (kind == CoinCase::kZeroDiagonal) {
      e.lambda[i] = half_det * Complex(0.0, s);
      e.v[i] = 0.0;
    } else {
      e.lambda[i] = half_det * Complex(aux.tau, s * aux.eta);
      e.v[i] = -s * aux.sigma_fn / aux.eta;
    }
    // sqrt(eta + s sigma)/(b sqrt(2 eta)) * (i b(k), sigma - s eta), rewritten
    // with (eta + s sigma)(eta - s sigma) = b^2.
    const Factors f = split_factors(p, aux, s);
    const double scale = 1.0 / (2.0 * aux.eta);
    e.u[i](0) = Complex(0.0, 1.0) * b_phase * std::sqrt(f.p * scale);
    e.u[i](1) = -s * std::sqrt(f.q * scale);
  }
  return e;
}

std::array<Spinor, 2> eigenvector_derivatives(const CoinParams& p, double k) {
  std::array<Spinor, 2> du{Spinor::Zero(), Spinor::Zero()};
  if (coin_case(p) == CoinCase::kDiagonal) return du;
  const SymbolEigen e = eigenpairs(p, k);
  const AuxFunctions aux = aux_functions(p, k);
  const double eta2 = aux.eta * aux.eta;
  for (Band j : kBands) {
    const int i = band_index(j);
    const double s = band_sign(j);
    const Factors f = split_factors(p, aux, s);
    // Logarithmic derivatives of the two components.
    const Complex d0 = Complex(0.0, 1.0) + s * aux.tau * f.q / (2.0 * eta2);
    const double d1 = -s * aux.tau * f.p / (2.0 * eta2);
    du[i](0) = e.u[i](0) * d0;
    du[i](1) = e.u[i](1) * d1;
  }
  return du;
}

double velocity(const CoinParams& p, double k, Band j) {
  switch (coin_case(p)) {
    case CoinCase::kZeroDiagonal:
      return 0.0;
    case CoinCase::kDiagonal:
      return j == Band::kFirst ? -1.0 : 1.0;
    case CoinCase::kGeneric:
      break;
  }
  const AuxFunctions aux = aux_functions(p, k);
  return -band_sign(j) * aux.sigma_fn / aux.eta;
}

double velocity_derivative(const CoinParams& p, double k, Band j) {
  if (coin_case(p) != CoinCase::kGeneric) return 0.0;
  const AuxFunctions aux = aux_functions(p, k);
  return -band_sign(j) * aux.tau * p.b * p.b /
         (aux.eta * aux.eta * aux.eta);
}

Matrix2c V_hat(const CoinParams& p, double k) {
  const SymbolEigen e = eigenpairs(p, k);
  Matrix2c v = Matrix2c::Zero();
  for (int i = 0; i < 2; ++i) v += e.v[i] * e.u[i] * e.u[i].adjoint();
  return v;
}

Matrix2c H_hat(const CoinParams& p, double k) {
  const SymbolEigen e = eigenpairs(p, k);
  Matrix2c h = Matrix2c::Zero();
  for (Band j : kBands) {
    const int i = band_index(j);
    h -= velocity_derivative(p, k, j) * e.u[i] * e.u[i].adjoint();
  }
  return h;
}

}  // namespace qwalk
