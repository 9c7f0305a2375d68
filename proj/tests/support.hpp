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

// Shared helpers for the unit tests and the acceptance runner: seeded
// random coins and states, plus oracles built independently of the code
// under test.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/angles.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/spectra.hpp"
#include "qwalk/symbol.hpp"

namespace qwalk::testing {

inline constexpr std::uint64_t kSeed = 20260418;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline Matrix2c hadamard() {
  Matrix2c h;
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return h;
}

inline CoinParams hadamard_params() { return make_params(kInvSqrt2, 0, 0, kPi); }

/// Coin with a drawn uniformly from [a_lo, a_hi] and uniform phases.
inline CoinParams random_coin(std::mt19937_64& rng, double a_lo = 0.05,
                              double a_hi = 0.95) {
  std::uniform_real_distribution<double> a(a_lo, a_hi);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  return make_params(a(rng), phase(rng), phase(rng), phase(rng));
}

/// Haar-ish random U(2) matrix from a QR of a complex Gaussian matrix.
inline Matrix2c random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix2c z;
  for (int i = 0; i < 4; ++i) z(i / 2, i % 2) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix2c> qr(z);
  Matrix2c q = qr.householderQ();
  // Polish to unitarity at machine precision.
  for (int it = 0; it < 2; ++it) {
    q = 0.5 * (q + q.adjoint().inverse());
  }
  return q;
}

inline WalkState random_state(std::mt19937_64& rng, Site lo, Site hi) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(2 * static_cast<std::size_t>(hi - lo + 1));
  for (Complex& c : amps) c = Complex(g(rng), g(rng));
  return WalkState(lo, std::move(amps));
}

/// Arg of e^{i x} in [0, 2 pi).
inline double arg_positive(Complex z) { return wrap_positive(std::arg(z)); }

/// Dense matrix of one walk step U = S C on sites [lo, hi], with the
/// amplitude leaving the window dropped. Built entry by entry from
/// (S psi)(x) = (psi_0(x + 1), psi_1(x - 1)) and (C psi)(x) = C(x) psi(x).
inline Eigen::MatrixXcd dense_step(const CoinField& f, Site lo, Site hi) {
  const auto n = static_cast<Eigen::Index>(hi - lo + 1);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    c.block<2, 2>(2 * i, 2 * i) = f.raw(lo + i);
    if (i + 1 < n) s(2 * i, 2 * (i + 1)) = 1.0;
    if (i >= 1) s(2 * i + 1, 2 * (i - 1) + 1) = 1.0;
  }
  return s * c;
}

inline Eigen::VectorXcd to_dense(const WalkState& s, Site lo, Site hi) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * (hi - lo + 1));
  for (Site x = lo; x <= hi; ++x) v.segment<2>(2 * (x - lo)) = s.at(x);
  return v;
}

/// Hausdorff distance between two finite sets on the circle.
inline double circular_hausdorff(std::vector<double> x, std::vector<double> y) {
  for (auto* v : {&x, &y}) {
    for (double& a : *v) a = wrap_positive(a);
    std::sort(v->begin(), v->end());
  }
  const auto one_sided = [](const std::vector<double>& p,
                            const std::vector<double>& q) {
    double worst = 0.0;
    for (double a : p) {
      auto it = std::lower_bound(q.begin(), q.end(), a);
      const double after = it == q.end() ? q.front() : *it;
      const double before = it == q.begin() ? q.back() : *(it - 1);
      worst = std::max(worst, std::min(circular_distance(a, after),
                                       circular_distance(a, before)));
    }
    return worst;
  };
  if (x.empty() || y.empty()) return x.empty() && y.empty() ? 0.0 : 1e300;
  return std::max(one_sided(x, y), one_sided(y, x));
}

/// Fourth-order central difference. The k-derivatives of the symbol grow
/// like 1 / b^n as a -> 1, which a second-order stencil does not resolve to
/// 1e-8 at any step size.
template <typename F>
auto central_diff4(F f, double x, double h) -> decltype(f(x)) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) /
         (12.0 * h);
}

/// The velocity as defined, i lambda_j' / lambda_j, by finite differences.
inline double fd_velocity(const CoinParams& p, double k, Band j,
                          double h = 1e-4) {
  const int i = band_index(j);
  const Complex dl = central_diff4(
      [&](double q) { return eigenpairs(p, q).lambda[i]; }, k, h);
  return (Complex(0, 1) * dl / eigenpairs(p, k).lambda[i]).real();
}

/// Angles of the sampled symbol spectrum arg lambda_j(2 pi m / n).
inline std::vector<double> scan_phases(const CoinParams& p, int n) {
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const SymbolEigen e = eigenpairs(p, kTwoPi * m / n);
    out.push_back(arg_positive(e.lambda[0]));
    out.push_back(arg_positive(e.lambda[1]));
  }
  return out;
}

/// Points spaced at most `step` apart along the arcs, endpoints included,
/// plus the isolated points.
inline std::vector<double> sample_arcs(const SpectralArcs& s, double step) {
  std::vector<double> out;
  for (const Arc& a : s.arcs) {
    const int n = std::max(1, static_cast<int>(std::ceil(a.length / step)));
    for (int i = 0; i <= n; ++i) {
      out.push_back(wrap_positive(a.start + a.length * i / n));
    }
  }
  out.insert(out.end(), s.points.begin(), s.points.end());
  return out;
}

/// min { v_j(k)^2 : arg lambda_j(k) = theta } located by a sign-change scan
/// over `n` k-points and bisection; +inf when theta is never attained.
inline double rho_root_oracle(const CoinParams& p, double theta, int n = 20000) {
  double best = std::numeric_limits<double>::infinity();
  for (Band j : kBands) {
    const int i = band_index(j);
    const auto f = [&](double k) {
      return wrap_signed(std::arg(eigenpairs(p, k).lambda[i]) - theta);
    };
    for (int m = 0; m < n; ++m) {
      double lo = kTwoPi * m / n;
      double hi = kTwoPi * (m + 1) / n;
      double flo = f(lo);
      const double fhi = f(hi);
      if (flo == 0.0) {
        best = std::min(best, std::pow(velocity(p, lo, j), 2));
        continue;
      }
      // A jump of about 2 pi is the branch cut, not a root.
      if (flo * fhi > 0.0 || std::abs(flo - fhi) > kPi) continue;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      best = std::min(best, std::pow(velocity(p, 0.5 * (lo + hi), j), 2));
    }
  }
  return best;
}

}  // namespace qwalk::testing
