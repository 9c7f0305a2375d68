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

#include <span>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Finitely supported C^2-valued amplitude field on Z. Amplitudes are stored
/// interleaved (site x occupies [2(x - offset), 2(x - offset) + 1]) and the
/// support is kept trimmed: the first and last stored sites are nonzero.
class WalkState {
 public:
  WalkState() = default;
  WalkState(Site offset, std::vector<Complex> interleaved);

  static WalkState delta(Site x, const Spinor& s);

  Site offset() const { return offset_; }
  Site last_site() const { return offset_ + static_cast<Site>(sites()) - 1; }
  std::size_t sites() const { return amps_.size() / 2; }
  bool empty() const { return amps_.empty(); }

  /// Zero outside the stored window.
  Spinor at(Site x) const;
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm_squared() const;
  double norm() const;

  friend bool operator==(const WalkState&, const WalkState&) = default;

 private:
  void trim();

  Site offset_ = 0;
  std::vector<Complex> amps_;
};

WalkState operator+(const WalkState& x, const WalkState& y);
WalkState operator-(const WalkState& x, const WalkState& y);

/// (S psi)(x) = (psi_0(x + 1), psi_1(x - 1)).
WalkState apply_shift(const WalkState& s);

/// (C psi)(x) = C(x) psi(x).
WalkState apply_coin(const CoinField& f, const WalkState& s);

/// One step of U = S C.
WalkState step(const CoinField& f, const WalkState& s);

WalkState evolve(const CoinField& f, WalkState s, long steps);

struct ObservableReport {
  double norm = 0.0;
  double mean_position = 0.0;
  double second_moment = 0.0;
  Site offset = 0;
  std::vector<double> distribution;  // p(x) = ||psi(x)||^2 from offset on
};

ObservableReport observe(const WalkState& s);

/// Exploratory: distribution of X_t / t after t steps, binned on [-1, 1].
struct VelocityHistogram {
  std::vector<double> bin_centers;
  std::vector<double> mass;
  double max_support_speed = 0.0;  // max |x| / t over the support
};

VelocityHistogram velocity_histogram(const CoinField& f, const WalkState& s,
                                     long t, int bins);

/// Mass of p(x) with |x| / t <= speed.
double mass_within_speed(const ObservableReport& r, long t, double speed);

/// J(psi_l, psi_r) = j_l psi_l + j_r psi_r, with j_r the indicator of x >= 0.
WalkState join(const WalkState& left, const WalkState& right);

/// J*(psi) = (j_l psi, j_r psi).
std::pair<WalkState, WalkState> split(const WalkState& s);

/// B(psi_l, psi_r) = J U_0 (psi_l, psi_r) - U J (psi_l, psi_r) with
/// U_0 = S C_left (+) S C_right.
WalkState junction_defect(const CoinField& f, const WalkState& left,
                          const WalkState& right);

}  // namespace qwalk
