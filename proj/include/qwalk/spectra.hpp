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

#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Closed arc {e^{i gamma} : gamma in [start, start + length]}, start in
/// [0, 2pi), length in (0, 2pi].
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
};

/// A closed subset of the unit circle: disjoint arcs plus isolated points.
/// Isolated points stand for eigenvalues of infinite multiplicity.
struct SpectralArcs {
  std::vector<Arc> arcs;
  std::vector<double> points;
};

/// Angular tolerance used to merge coincident endpoints and thresholds.
inline constexpr double kAngleMergeTol = 1e-10;

/// Sorts, merges overlapping or touching arcs (the circle is cut at 0 and
/// re-glued), and drops points already covered by an arc.
SpectralArcs normalize(SpectralArcs s);

/// Spectrum of the constant-coin walk S C.
SpectralArcs arcs(const CoinParams& p);

/// Membership with arc boundaries counted inside, up to `tol`.
bool contains(const SpectralArcs& s, double gamma, double tol = 1e-12);

/// Union of the spectra of the left and right asymptotic walks.
SpectralArcs essential_spectrum(const CoinParams& left,
                                const CoinParams& right);

/// Complement of the arc union as open arcs. Isolated points are ignored.
SpectralArcs gaps(const SpectralArcs& s);

double total_length(const SpectralArcs& s);

/// Arc endpoints and isolated points, sorted in [0, 2pi).
std::vector<double> boundary(const SpectralArcs& s);

enum class Side { kLeft, kRight, kBoth };

struct Threshold {
  double angle = 0.0;
  Side origin = Side::kLeft;
};

/// Thresholds: boundary points of the left and right asymptotic spectra.
/// At most 8 entries.
struct ThresholdSet {
  std::vector<Threshold> points;

  std::size_t size() const { return points.size(); }
  /// Circular distance from gamma to the nearest threshold; +inf if empty.
  double distance(double gamma) const;
};

ThresholdSet thresholds(const CoinParams& left, const CoinParams& right);

/// Value of the Mourre function: either +inf or a finite number >= 0.
class RhoValue {
 public:
  static RhoValue infinite() { return RhoValue(true, 0.0); }
  static RhoValue finite(double v) { return RhoValue(false, v); }

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error when infinite.
  double value() const;

  friend RhoValue min(const RhoValue& x, const RhoValue& y);
  friend bool operator==(const RhoValue&, const RhoValue&) = default;

 private:
  RhoValue(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

/// Mourre function of the constant-coin walk with conjugate operator built
/// from its velocity operator. On the interior of a generic spectrum it
/// equals (a^2 - c^2) / (1 - c^2) with c = cos(theta - delta/2), the minimum
/// of v_j(k)^2 over the level set lambda_j(k) = e^{i theta}.
RhoValue rho_tilde_asymptotic(const CoinParams& p, double theta);

/// min of the left and right asymptotic Mourre functions: a lower bound for
/// the Mourre function of the full walk.
RhoValue mourre_lower_bound(const CoinParams& left, const CoinParams& right,
                            double theta);

}  // namespace qwalk
