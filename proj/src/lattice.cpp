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

#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/error.hpp"

namespace qwalk {

WalkState::WalkState(Site offset, std::vector<Complex> interleaved)
    : offset_(offset), amps_(std::move(interleaved)) {
  if (amps_.size() % 2 != 0) {
    throw ValidationError("walk state needs two amplitudes per site");
  }
  trim();
}

WalkState WalkState::delta(Site x, const Spinor& s) {
  return WalkState(x, {s(0), s(1)});
}

void WalkState::trim() {
  const Complex zero(0.0, 0.0);
  std::size_t lo = 0;
  std::size_t n = sites();
  while (lo < n && amps_[2 * lo] == zero && amps_[2 * lo + 1] == zero) ++lo;
  std::size_t hi = n;
  while (hi > lo && amps_[2 * hi - 2] == zero && amps_[2 * hi - 1] == zero) {
    --hi;
  }
  if (lo == hi) {
    amps_.clear();
    offset_ = 0;
    return;
  }
  if (lo > 0 || hi < n) {
    amps_ = std::vector<Complex>(amps_.begin() + 2 * lo, amps_.begin() + 2 * hi);
    offset_ += static_cast<Site>(lo);
  }
}

Spinor WalkState::at(Site x) const {
  if (empty() || x < offset_ || x > last_site()) return Spinor::Zero();
  const auto i = static_cast<std::size_t>(x - offset_);
  return Spinor(amps_[2 * i], amps_[2 * i + 1]);
}

double WalkState::norm_squared() const {
  double sum = 0.0;
  for (const Complex& c : amps_) sum += std::norm(c);
  return sum;
}

double WalkState::norm() const { return std::sqrt(norm_squared()); }

namespace {

WalkState combine(const WalkState& x, const WalkState& y, double sign) {
  if (x.empty() && y.empty()) return {};
  Site lo = x.empty() ? y.offset() : x.offset();
  Site hi = x.empty() ? y.last_site() : x.last_site();
  if (!y.empty()) {
    lo = std::min(lo, y.offset());
    hi = std::max(hi, y.last_site());
  }
  std::vector<Complex> out(2 * static_cast<std::size_t>(hi - lo + 1));
  for (Site s = lo; s <= hi; ++s) {
    const Spinor v = x.at(s) + sign * y.at(s);
    const auto i = static_cast<std::size_t>(s - lo);
    out[2 * i] = v(0);
    out[2 * i + 1] = v(1);
  }
  return WalkState(lo, std::move(out));
}

// Keeps sites with keep(x) true and zeroes the rest.
template <typename Pred>
WalkState restrict_to(const WalkState& s, Pred keep) {
  if (s.empty()) return {};
  std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
  for (Site x = s.offset(); x <= s.last_site(); ++x) {
    if (keep(x)) continue;
    const auto i = static_cast<std::size_t>(x - s.offset());
    out[2 * i] = Complex(0.0, 0.0);
    out[2 * i + 1] = Complex(0.0, 0.0);
  }
  return WalkState(s.offset(), std::move(out));
}

}  // namespace

WalkState operator+(const WalkState& x, const WalkState& y) {
  return combine(x, y, 1.0);
}

WalkState operator-(const WalkState& x, const WalkState& y) {
  return combine(x, y, -1.0);
}

WalkState apply_shift(const WalkState& s) {
  if (s.empty()) return {};
  const std::size_t n = s.sites();
  const auto in = s.amplitudes();
  // New window [offset - 1, last + 1] holds n + 2 sites.
  std::vector<Complex> out(2 * (n + 2));
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = in[2 * i];              // up component moves left
    out[2 * (i + 2) + 1] = in[2 * i + 1];  // down component moves right
  }
  return WalkState(s.offset() - 1, std::move(out));
}

WalkState apply_coin(const CoinField& f, const WalkState& s) {
  if (s.empty()) return {};
  const auto in = s.amplitudes();
  std::vector<Complex> out(in.size());
  for (std::size_t i = 0; i < s.sites(); ++i) {
    const Matrix2c c = f.raw(s.offset() + static_cast<Site>(i));
    out[2 * i] = c(0, 0) * in[2 * i] + c(0, 1) * in[2 * i + 1];
    out[2 * i + 1] = c(1, 0) * in[2 * i] + c(1, 1) * in[2 * i + 1];
  }
  return WalkState(s.offset(), std::move(out));
}

WalkState step(const CoinField& f, const WalkState& s) {
  return apply_shift(apply_coin(f, s));
}

WalkState evolve(const CoinField& f, WalkState s, long steps) {
  if (steps < 0) throw ValidationError("evolve needs steps >= 0");
  for (long t = 0; t < steps; ++t) s = step(f, s);
  return s;
}

ObservableReport observe(const WalkState& s) {
  ObservableReport r;
  r.offset = s.offset();
  r.distribution.resize(s.sites());
  double total = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < s.sites(); ++i) {
    const double p = std::norm(s.amplitudes()[2 * i]) +
                     std::norm(s.amplitudes()[2 * i + 1]);
    const double x = static_cast<double>(s.offset() + static_cast<Site>(i));
    r.distribution[i] = p;
    total += p;
    first += x * p;
    second += x * x * p;
  }
  r.norm = std::sqrt(total);
  if (total > 0.0) {
    r.mean_position = first / total;
    r.second_moment = second / total;
  }
  return r;
}

double mass_within_speed(const ObservableReport& r, long t, double speed) {
  if (t < 1) throw ValidationError("speed window needs t >= 1");
  double mass = 0.0;
  for (std::size_t i = 0; i < r.distribution.size(); ++i) {
    const double x = static_cast<double>(r.offset + static_cast<Site>(i));
    if (std::abs(x) / static_cast<double>(t) <= speed) mass += r.distribution[i];
  }
  return mass;
}

VelocityHistogram velocity_histogram(const CoinField& f, const WalkState& s,
                                     long t, int bins) {
  if (t < 1) throw ValidationError("velocity histogram needs t >= 1");
  if (bins < 1) throw ValidationError("velocity histogram needs bins >= 1");
  const ObservableReport r = observe(evolve(f, s, t));
  VelocityHistogram h;
  h.bin_centers.resize(static_cast<std::size_t>(bins));
  h.mass.assign(static_cast<std::size_t>(bins), 0.0);
  const double width = 2.0 / bins;
  for (int b = 0; b < bins; ++b) {
    h.bin_centers[static_cast<std::size_t>(b)] = -1.0 + (b + 0.5) * width;
  }
  const auto td = static_cast<double>(t);
  for (std::size_t i = 0; i < r.distribution.size(); ++i) {
    const double p = r.distribution[i];
    if (p == 0.0) continue;
    const double v = static_cast<double>(r.offset + static_cast<Site>(i)) / td;
    h.max_support_speed = std::max(h.max_support_speed, std::abs(v));
    const int b = std::clamp(static_cast<int>(std::floor((v + 1.0) / width)),
                             0, bins - 1);
    h.mass[static_cast<std::size_t>(b)] += p;
  }
  return h;
}

WalkState join(const WalkState& left, const WalkState& right) {
  return restrict_to(left, [](Site x) { return x < 0; }) +
         restrict_to(right, [](Site x) { return x >= 0; });
}

std::pair<WalkState, WalkState> split(const WalkState& s) {
  return {restrict_to(s, [](Site x) { return x < 0; }),
          restrict_to(s, [](Site x) { return x >= 0; })};
}

WalkState junction_defect(const CoinField& f, const WalkState& left,
                          const WalkState& right) {
  const CoinField cl = constant_field(f.left());
  const CoinField cr = constant_field(f.right());
  const WalkState ju0 = join(step(cl, left), step(cr, right));
  const WalkState uj = step(f, join(left, right));
  return ju0 - uj;
}

}  // namespace qwalk
