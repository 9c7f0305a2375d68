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

#include "qwalk/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qwalk/angles.hpp"

namespace qwalk {
namespace {

struct Interval {
  double lo;
  double hi;
};

bool full_circle(const Arc& a) { return a.length >= kTwoPi - kAngleMergeTol; }

std::vector<double> side_boundary(const CoinParams& p) {
  std::vector<double> out;
  switch (coin_case(p)) {
    case CoinCase::kDiagonal:
      break;
    case CoinCase::kZeroDiagonal:
      out = {wrap_positive(0.5 * p.delta + 0.5 * kPi),
             wrap_positive(0.5 * p.delta - 0.5 * kPi)};
      break;
    case CoinCase::kGeneric: {
      const double h = 0.5 * p.delta;
      const double t = std::acos(p.a);
      out = {wrap_positive(h + t), wrap_positive(kPi + h - t),
             wrap_positive(kPi + h + t), wrap_positive(h - t)};
      break;
    }
  }
  return out;
}

}  // namespace

SpectralArcs normalize(SpectralArcs s) {
  SpectralArcs out;
  std::vector<Interval> cut;
  bool full = false;
  for (const Arc& a : s.arcs) {
    if (!(a.length > 0.0)) continue;
    if (full_circle(a)) {
      full = true;
      break;
    }
    const double start = wrap_positive(a.start);
    const double end = start + a.length;
    if (end <= kTwoPi) {
      cut.push_back({start, end});
    } else {
      cut.push_back({start, kTwoPi});
      cut.push_back({0.0, end - kTwoPi});
    }
  }
  if (full) {
    out.arcs.push_back({0.0, kTwoPi});
    return out;
  }
  std::sort(cut.begin(), cut.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : cut) {
    if (!merged.empty() && iv.lo <= merged.back().hi + kAngleMergeTol) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  if (merged.size() == 1 && merged.front().lo <= kAngleMergeTol &&
      merged.front().hi >= kTwoPi - kAngleMergeTol) {
    out.arcs.push_back({0.0, kTwoPi});
    return out;
  }
  // Re-glue an interval ending at 2pi with one starting at 0.
  if (merged.size() >= 2 && merged.front().lo <= kAngleMergeTol &&
      merged.back().hi >= kTwoPi - kAngleMergeTol) {
    merged.back().hi = kTwoPi + merged.front().hi;
    merged.erase(merged.begin());
  }
  for (const Interval& iv : merged) {
    out.arcs.push_back({iv.lo, iv.hi - iv.lo});
  }
  std::sort(out.arcs.begin(), out.arcs.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });

  std::vector<double> pts;
  for (double p : s.points) pts.push_back(wrap_positive(p));
  std::sort(pts.begin(), pts.end());
  for (double p : pts) {
    SpectralArcs arcs_only{out.arcs, {}};
    if (contains(arcs_only, p, kAngleMergeTol)) continue;
    if (!out.points.empty() &&
        circular_distance(out.points.back(), p) <= kAngleMergeTol) {
      continue;
    }
    if (!out.points.empty() &&
        circular_distance(out.points.front(), p) <= kAngleMergeTol) {
      continue;
    }
    out.points.push_back(p);
  }
  return out;
}

SpectralArcs arcs(const CoinParams& p) {
  SpectralArcs s;
  switch (coin_case(p)) {
    case CoinCase::kDiagonal:
      s.arcs.push_back({0.0, kTwoPi});
      break;
    case CoinCase::kZeroDiagonal:
      s.points = side_boundary(p);
      break;
    case CoinCase::kGeneric: {
      const double h = 0.5 * p.delta;
      const double t = std::acos(p.a);
      const double len = kPi - 2.0 * t;
      s.arcs.push_back({wrap_positive(h + t), len});
      s.arcs.push_back({wrap_positive(kPi + h + t), len});
      break;
    }
  }
  std::sort(s.arcs.begin(), s.arcs.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
  std::sort(s.points.begin(), s.points.end());
  return s;
}

bool contains(const SpectralArcs& s, double gamma, double tol) {
  for (const Arc& a : s.arcs) {
    if (full_circle(a)) return true;
    const double off = ccw_offset(a.start, gamma);
    if (off <= a.length + tol || off >= kTwoPi - tol) return true;
  }
  for (double p : s.points) {
    if (circular_distance(p, gamma) <= tol) return true;
  }
  return false;
}

SpectralArcs essential_spectrum(const CoinParams& left,
                                const CoinParams& right) {
  SpectralArcs l = arcs(left);
  const SpectralArcs r = arcs(right);
  l.arcs.insert(l.arcs.end(), r.arcs.begin(), r.arcs.end());
  l.points.insert(l.points.end(), r.points.begin(), r.points.end());
  return normalize(std::move(l));
}

SpectralArcs gaps(const SpectralArcs& s) {
  const SpectralArcs n = normalize(SpectralArcs{s.arcs, {}});
  SpectralArcs out;
  if (n.arcs.empty()) {
    out.arcs.push_back({0.0, kTwoPi});
    return out;
  }
  if (full_circle(n.arcs.front())) return out;
  const std::size_t m = n.arcs.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Arc& cur = n.arcs[i];
    const Arc& next = n.arcs[(i + 1) % m];
    const double start = wrap_positive(cur.end());
    double len = ccw_offset(start, next.start);
    if (m == 1) len = kTwoPi - cur.length;
    if (len > 0.0) out.arcs.push_back({start, len});
  }
  std::sort(out.arcs.begin(), out.arcs.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
  return out;
}

double total_length(const SpectralArcs& s) {
  double sum = 0.0;
  for (const Arc& a : s.arcs) sum += a.length;
  return sum;
}

std::vector<double> boundary(const SpectralArcs& s) {
  std::vector<double> out;
  for (const Arc& a : s.arcs) {
    if (full_circle(a)) continue;
    out.push_back(wrap_positive(a.start));
    out.push_back(wrap_positive(a.end()));
  }
  out.insert(out.end(), s.points.begin(), s.points.end());
  std::sort(out.begin(), out.end());
  return out;
}

double ThresholdSet::distance(double gamma) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Threshold& t : points) {
    best = std::min(best, circular_distance(t.angle, gamma));
  }
  return best;
}

ThresholdSet thresholds(const CoinParams& left, const CoinParams& right) {
  std::vector<Threshold> all;
  for (double a : side_boundary(left)) all.push_back({a, Side::kLeft});
  for (double a : side_boundary(right)) all.push_back({a, Side::kRight});
  std::sort(all.begin(), all.end(), [](const Threshold& x, const Threshold& y) {
    return x.angle < y.angle;
  });
  ThresholdSet out;
  const auto absorb = [](Threshold& into, const Threshold& t) {
    if (into.origin != t.origin) into.origin = Side::kBoth;
  };
  for (const Threshold& t : all) {
    if (!out.points.empty() &&
        circular_distance(out.points.back().angle, t.angle) <=
            kAngleMergeTol) {
      absorb(out.points.back(), t);
      continue;
    }
    out.points.push_back(t);
  }
  if (out.points.size() >= 2 &&
      circular_distance(out.points.front().angle, out.points.back().angle) <=
          kAngleMergeTol) {
    absorb(out.points.front(), out.points.back());
    out.points.pop_back();
  }
  return out;
}

double RhoValue::value() const {
  if (infinite_) throw std::logic_error("RhoValue is infinite");
  return value_;
}

RhoValue min(const RhoValue& x, const RhoValue& y) {
  if (x.infinite_) return y;
  if (y.infinite_) return x;
  return x.value_ <= y.value_ ? x : y;
}

RhoValue rho_tilde_asymptotic(const CoinParams& p, double theta) {
  const CoinCase kind = coin_case(p);
  if (kind == CoinCase::kDiagonal) return RhoValue::finite(1.0);
  for (double b : side_boundary(p)) {
    if (circular_distance(b, theta) <= kAngleMergeTol) {
      return RhoValue::finite(0.0);
    }
  }
  if (kind == CoinCase::kZeroDiagonal) return RhoValue::infinite();
  if (!contains(arcs(p), theta, 0.0)) return RhoValue::infinite();
  const double c = std::cos(theta - 0.5 * p.delta);
  const double value = (p.a * p.a - c * c) / (1.0 - c * c);
  return RhoValue::finite(std::max(0.0, value));
}

RhoValue mourre_lower_bound(const CoinParams& left, const CoinParams& right,
                            double theta) {
  return min(rho_tilde_asymptotic(left, theta),
             rho_tilde_asymptotic(right, theta));
}

}  // namespace qwalk
