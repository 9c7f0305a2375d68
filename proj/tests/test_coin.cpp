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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qwalk/coin.hpp"
#include "qwalk/error.hpp"
#include "support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

void check_params(const CoinParams& p, double a, double alpha, double beta,
                  double delta) {
  CHECK(p.a == doctest::Approx(a).epsilon(1e-14));
  CHECK(p.b == doctest::Approx(std::sqrt(1 - a * a)).epsilon(1e-14));
  CHECK(circular_distance(p.alpha, alpha) < 1e-14);
  CHECK(circular_distance(p.beta, beta) < 1e-14);
  CHECK(circular_distance(p.delta, delta) < 1e-14);
}

double max_entry_diff(const Matrix2c& x, const Matrix2c& y) {
  return (x - y).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("coin") {

TEST_CASE("op_norm agrees with an SVD") {
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    Matrix2c m;
    for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = Complex(g(rng), g(rng));
    Eigen::JacobiSVD<Matrix2c> svd(m);
    CHECK(op_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-13));
  }
  CHECK(op_norm(Matrix2c::Zero()) == 0.0);
  CHECK(op_norm(hadamard()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("CoinMatrix rejects non-unitary input") {
  Matrix2c m = hadamard();
  m(0, 0) *= 1.0 + 1e-9;
  CHECK_THROWS_AS(CoinMatrix{m}, ValidationError);
  Matrix2c z = Matrix2c::Identity();
  z(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(CoinMatrix{z}, ValidationError);
  CHECK_NOTHROW(CoinMatrix{hadamard()});
  CHECK_NOTHROW(CoinMatrix{Complex(0, 1) * Matrix2c::Identity()});
}

TEST_CASE("parametrize: Hadamard, identity, defect coin") {
  check_params(parametrize(hadamard()), kInvSqrt2, 0, 0, kPi);
  check_params(parametrize(Matrix2c::Identity()), 1, 0, 0, 0);
  Matrix2c defect;
  defect << 1, 0, 0, -1;
  check_params(parametrize(defect), 1, 0, 0, kPi);
}

TEST_CASE("reconstruct: identity, Hadamard, off-diagonal") {
  CHECK(max_entry_diff(reconstruct(make_params(1, 0, 0, 0)).matrix(),
                       Matrix2c::Identity()) < 1e-15);
  CHECK(max_entry_diff(reconstruct(make_params(kInvSqrt2, 0, 0, kPi)).matrix(),
                       hadamard()) < 1e-15);
  const double sigma = 0.83;
  Matrix2c expect;
  expect << 0, std::polar(1.0, sigma), -std::polar(1.0, -sigma), 0;
  CHECK(max_entry_diff(reconstruct(make_params(0, 0, sigma, 0)).matrix(),
                       expect) < 1e-15);
}

TEST_CASE("parametrize and reconstruct round-trip on random unitaries") {
  std::mt19937_64 rng(kSeed + 1);
  for (int t = 0; t < 500; ++t) {
    const Matrix2c u = random_unitary(rng);
    const CoinParams p = parametrize(u);
    CHECK(p.a >= 0.0);
    CHECK(p.b >= 0.0);
    CHECK(p.delta > -kPi);
    CHECK(p.delta <= kPi);
    CHECK(max_entry_diff(reconstruct(p).matrix(), u) < 1e-12);
  }
}

TEST_CASE("unobservable phases are zeroed") {
  Matrix2c off;
  off << 0, Complex(0, 1), Complex(0, 1), 0;
  CHECK(parametrize(off).alpha == 0.0);
  const Matrix2c diag = Complex(0, 1) * Matrix2c::Identity();
  CHECK(parametrize(diag).beta == 0.0);
}

TEST_CASE("coin_case uses the degeneracy cutoff") {
  CHECK(coin_case(make_params(0.0, 0, 0, 0)) == CoinCase::kZeroDiagonal);
  CHECK(coin_case(make_params(0.5e-12, 0, 0, 0)) == CoinCase::kZeroDiagonal);
  CHECK(coin_case(make_params(2e-12, 0, 0, 0)) == CoinCase::kGeneric);
  CHECK(coin_case(make_params(1.0 - 0.5e-12, 0, 0, 0)) == CoinCase::kDiagonal);
  CHECK(coin_case(make_params(0.5, 0, 0, 0)) == CoinCase::kGeneric);
  CHECK_THROWS_AS(make_params(1.5, 0, 0, 0), ValidationError);
  CHECK_THROWS_AS(make_params(-0.1, 0, 0, 0), ValidationError);
  CoinParams bad;
  bad.a = 0.5;
  bad.b = 0.5;
  CHECK_THROWS_AS(reconstruct(bad), ValidationError);
}

TEST_CASE("rotation is the real SO(2) matrix of angle theta / 2") {
  const Matrix2c r = rotation(kPi / 2);
  CHECK(r(0, 0).real() == doctest::Approx(std::cos(kPi / 4)));
  CHECK(r(0, 1).real() == doctest::Approx(-std::sin(kPi / 4)));
  CHECK(r(1, 0).real() == doctest::Approx(std::sin(kPi / 4)));
  CHECK(max_entry_diff(rotation(0.3) * rotation(0.4), rotation(0.7)) < 1e-15);
  CHECK_NOTHROW(CoinMatrix{rotation(2.1)});
}

TEST_CASE("two-phase fields") {
  const CoinField flat = two_phase(0, 0, false);
  for (Site x = -5; x <= 5; ++x) {
    CHECK(max_entry_diff(flat.raw(x), hadamard()) < 1e-15);
  }
  const CoinField f = two_phase(kPi / 2, 0.4, false);
  CHECK(std::abs(f.raw(3)(0, 1) - Complex(0, kInvSqrt2)) < 1e-15);
  CHECK(max_entry_diff(f.raw(-1), two_phase_coin(0.4)) < 1e-15);
  CHECK(max_entry_diff(f.right().matrix(), two_phase_coin(kPi / 2)) < 1e-15);

  const CoinField d = two_phase(0, kPi, true);
  Matrix2c defect;
  defect << 1, 0, 0, -1;
  CHECK(max_entry_diff(d.raw(0), defect) < 1e-15);
  CHECK(max_entry_diff(d.raw(-1), two_phase_coin(kPi)) < 1e-15);
  CHECK(max_entry_diff(d.raw(1), two_phase_coin(0)) < 1e-15);
  CHECK(d.family() == "two_phase_defect");
}

TEST_CASE("split-step profile") {
  const CoinField flat = split_step_profile(0.9, 0.9);
  for (Site x = -20; x <= 20; ++x) {
    CHECK(max_entry_diff(flat.raw(x), rotation(0.9)) < 1e-15);
  }
  const CoinField f = split_step_profile(0, kPi / 2, 3);
  double prev = 1e300;
  for (Site x = 1; x <= 100; ++x) {
    const double dev = op_norm(f.raw(x) - f.right().matrix());
    CHECK(dev <= prev);
    prev = dev;
  }
  CHECK(max_entry_diff(f.left().matrix(), rotation(0)) < 1e-15);
  CHECK_THROWS_AS(split_step_profile(0, 1, 0), ValidationError);
}

TEST_CASE("short-range verification") {
  const CoinField tp = two_phase(0.3, 1.2, true);
  CHECK(verify_short_range(tp, -200, 200, 1e-6, 5.0).pass);
  CHECK(verify_short_range(split_step_profile(0, kPi / 2, 3), -50, 50, 1, 1)
            .pass);

  const CoinField slow(
      "slow",
      [](Site x) {
        return rotation(1.0 / std::log(std::abs(static_cast<double>(x)) + 2));
      },
      CoinMatrix(), CoinMatrix());
  const ShortRangeReport r = verify_short_range(slow, -10000, 10000, 1, 1);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_ratio > 1.0);
  CHECK_FALSE(verify_short_range(slow, -10000, 10000, 100, 0.1).pass);
  CHECK_THROWS_AS(verify_short_range(tp, 1, 0, 1, 1), ValidationError);
}

TEST_CASE("table fields fall back to the tails") {
  std::map<Site, CoinMatrix> sites;
  Matrix2c defect;
  defect << 1, 0, 0, -1;
  sites.emplace(2, CoinMatrix(defect));
  const CoinField f = table_field(sites, CoinMatrix(hadamard()),
                                  CoinMatrix(rotation(1.0)));
  CHECK(max_entry_diff(f.raw(2), defect) < 1e-15);
  CHECK(max_entry_diff(f.raw(-7), hadamard()) < 1e-15);
  CHECK(max_entry_diff(f.raw(0), rotation(1.0)) < 1e-15);
}

TEST_CASE("a global phase shifts delta by twice the phase") {
  const CoinField f = with_global_phase(two_phase(0.2, 1.1, false), 0.35);
  const CoinParams base = parametrize(two_phase_coin(0.2));
  const CoinParams shifted = parametrize(f.right());
  CHECK(shifted.a == doctest::Approx(base.a));
  CHECK(circular_distance(shifted.delta, base.delta + 0.7) < 1e-13);
}

}  // TEST_SUITE
