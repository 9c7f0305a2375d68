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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include <Eigen/Dense>

namespace qwalk {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Spinor = Eigen::Vector2cd;
using Site = std::int64_t;

/// Bound on ||C*C - I||_op accepted for a coin.
inline constexpr double kUnitarityTol = 1e-12;

/// a < kDegeneracyTol is treated as a = 0, 1 - a < kDegeneracyTol as a = 1.
inline constexpr double kDegeneracyTol = 1e-12;

/// Largest singular value of a 2x2 matrix, from the eigenvalues of its Gram
/// matrix.
double op_norm(const Matrix2c& m);

/// A validated 2x2 unitary.
class CoinMatrix {
 public:
  CoinMatrix() : m_(Matrix2c::Identity()) {}
  explicit CoinMatrix(const Matrix2c& m);

  const Matrix2c& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  Matrix2c m_;
};

/// Canonical parametrization
///   C = e^{i delta/2} [[ a e^{i(alpha - delta/2)},  b e^{i(beta - delta/2)} ],
///                      [-b e^{-i(beta - delta/2)},  a e^{-i(alpha - delta/2)}]]
/// with a, b >= 0, a^2 + b^2 = 1 and all angles in (-pi, pi].
struct CoinParams {
  double a = 1.0;
  double b = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

/// Builds params from (a, alpha, beta, delta); b = sqrt(1 - a^2) and the
/// angles are wrapped to (-pi, pi]. Throws ValidationError unless a is in
/// [0, 1].
CoinParams make_params(double a, double alpha, double beta, double delta);

/// Throws ValidationError if a, b leave [0, 1] or a^2 + b^2 != 1.
void validate(const CoinParams& p);

/// The three regimes of the symbol analysis, decided with kDegeneracyTol.
enum class CoinCase {
  kZeroDiagonal,  // a = 0: pure point spectrum
  kGeneric,       // 0 < a < 1: two arcs
  kDiagonal,      // a = 1: full circle
};

CoinCase coin_case(const CoinParams& p);

CoinParams parametrize(const CoinMatrix& c);
/// Validates unitarity first.
CoinParams parametrize(const Matrix2c& c);
CoinMatrix reconstruct(const CoinParams& p);

/// Real rotation R(theta) = [[cos(theta/2), -sin(theta/2)],
///                           [sin(theta/2),  cos(theta/2)]].
Matrix2c rotation(double theta);

/// Constants of the short-range bound ||C(x) - C_side|| <= kappa |x|^{-1-eps}.
struct TailBound {
  double kappa = 1.0;
  double eps = 1.0;
};

/// Position-dependent coin x -> C(x) together with its asymptotic coins.
/// Immutable; the rule must be a pure function of x.
class CoinField {
 public:
  using Rule = std::function<Matrix2c(Site)>;

  CoinField(std::string family, Rule rule, CoinMatrix left, CoinMatrix right,
            TailBound left_tail = {}, TailBound right_tail = {});

  /// Coin at site x; throws ValidationError if the rule yields a
  /// non-unitary matrix.
  CoinMatrix at(Site x) const { return CoinMatrix(rule_(x)); }

  /// Unvalidated access for hot loops over fields whose unitarity is
  /// known by construction.
  Matrix2c raw(Site x) const { return rule_(x); }

  const std::string& family() const { return family_; }
  const CoinMatrix& left() const { return left_; }
  const CoinMatrix& right() const { return right_; }
  const TailBound& left_tail() const { return left_tail_; }
  const TailBound& right_tail() const { return right_tail_; }

 private:
  std::string family_;
  Rule rule_;
  CoinMatrix left_;
  CoinMatrix right_;
  TailBound left_tail_;
  TailBound right_tail_;
};

CoinField constant_field(const CoinMatrix& c);

/// Two-phase walk: (1/sqrt2)[[1, e^{i s}], [e^{-i s}, -1]] with s = sigma_plus
/// for x >= 0 and s = sigma_minus for x <= -1. With a defect, C(0) = diag(1, -1).
CoinField two_phase(double sigma_plus, double sigma_minus, bool with_defect);

/// Matrix used by two_phase for one phase.
Matrix2c two_phase_coin(double sigma);

/// Split-step tanh profile C(x) = R(theta(x)) with
/// theta(x) = (theta_minus + theta_plus)/2 + (theta_plus - theta_minus)/2 * tanh(x/scale).
CoinField split_step_profile(double theta_minus, double theta_plus,
                             double scale = 3.0);

/// Explicit per-site coins; unlisted sites take the left coin for x < 0 and
/// the right coin for x >= 0.
CoinField table_field(std::map<Site, CoinMatrix> sites, CoinMatrix left,
                      CoinMatrix right, TailBound left_tail = {},
                      TailBound right_tail = {});

/// Multiplies every coin (and both asymptotic coins) by e^{i phi}.
CoinField with_global_phase(const CoinField& f, double phi);

struct ShortRangeReport {
  bool pass = true;
  double worst_ratio = 0.0;  // max ||C(x) - C_side|| / (kappa |x|^{-1-eps})
  Site worst_site = 0;
  std::size_t checked = 0;
};

/// Checks the short-range bound at every x != 0 in [lo, hi].
ShortRangeReport verify_short_range(const CoinField& f, Site lo, Site hi,
                                    double kappa, double eps);

}  // namespace qwalk
