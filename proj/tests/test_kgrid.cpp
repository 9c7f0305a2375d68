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
#include <random>

#include "qwalk/error.hpp"
#include "qwalk/kgrid.hpp"
#include "qwalk/symbol.hpp"
#include "support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

// Grid samples of a scalar function on both spinor components.
Eigen::VectorXcd sampled(int grid, const std::function<Complex(double)>& f) {
  Eigen::VectorXcd v(2 * grid);
  for (int m = 0; m < grid; ++m) {
    const Complex y = f(KGridOperator::k(m, grid));
    v(2 * m) = y;
    v(2 * m + 1) = y;
  }
  return v;
}

// d/dk of periodic samples through an explicit DFT, independent of build_P.
std::vector<Complex> spectral_derivative(const std::vector<Complex>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<Complex> coef(f.size());
  for (int j = 0; j < n; ++j) {
    const int mode = j < n / 2 ? j : j - n;
    Complex c = 0.0;
    for (int m = 0; m < n; ++m) {
      c += f[m] * std::polar(1.0, -kTwoPi * ((static_cast<long>(mode) * m) % n) / n);
    }
    coef[j] = c / static_cast<double>(n);
  }
  std::vector<Complex> out(f.size());
  for (int m = 0; m < n; ++m) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) {
      const int mode = j < n / 2 ? j : j - n;
      if (j == n / 2) continue;  // Nyquist mode has no symmetric derivative
      s += Complex(0, mode) * coef[j] *
           std::polar(1.0, kTwoPi * ((static_cast<long>(mode) * m) % n) / n);
    }
    out[m] = s;
  }
  return out;
}

double max_derivative_error(const CoinParams& p, int grid) {
  double worst = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int c = 0; c < 2; ++c) {
      std::vector<Complex> f(static_cast<std::size_t>(grid));
      for (int m = 0; m < grid; ++m) {
        f[m] = eigenpairs(p, KGridOperator::k(m, grid)).u[j](c);
      }
      const std::vector<Complex> df = spectral_derivative(f);
      for (int m = 0; m < grid; ++m) {
        const Complex exact =
            eigenvector_derivatives(p, KGridOperator::k(m, grid))[j](c);
        worst = std::max(worst, std::abs(exact - df[m]));
      }
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("kgrid") {

TEST_CASE("grid validation") {
  CHECK_NOTHROW(validate_grid(32));
  CHECK_NOTHROW(validate_grid(256));
  CHECK_THROWS_AS(validate_grid(16), ValidationError);
  CHECK_THROWS_AS(validate_grid(48), ValidationError);
  CHECK_THROWS_AS(build_P(0), ValidationError);
  CHECK(KGridOperator::k(64, 256) == doctest::Approx(kPi / 2));
}

TEST_CASE("P is the spectral derivative -i d/dk") {
  const int grid = 64;
  const Eigen::MatrixXcd p = build_P(grid).matrix();
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  const Eigen::VectorXcd one = sampled(grid, [](double) { return 1.0; });
  CHECK((p * one).norm() <= 1e-13);
  const auto mode3 = [](double k) { return std::polar(1.0, 3 * k); };
  CHECK((p * sampled(grid, mode3) - 3.0 * sampled(grid, mode3)).norm() <= 1e-12);
  const Eigen::VectorXcd ps = p * sampled(grid, [](double k) { return std::sin(k); });
  const Eigen::VectorXcd expect =
      sampled(grid, [](double k) { return Complex(0, -std::cos(k)); });
  CHECK((ps - expect).cwiseAbs().maxCoeff() <= 1e-13);
  // Eigenvalues are the integers -K/2 .. K/2 - 1.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-grid / 2).epsilon(1e-12));
  CHECK(es.eigenvalues()(2 * grid - 1) ==
        doctest::Approx(grid / 2 - 1).epsilon(1e-12));
}

TEST_CASE("closed-form u' agrees with spectral differentiation") {
  CHECK(max_derivative_error(make_params(0, 0, 0.3, 0.0), 64) <= 1e-12);
  CHECK(max_derivative_error(make_params(0, 0, -1.0, kPi / 3), 64) <= 1e-12);
  CHECK(max_derivative_error(hadamard_params(), 128) <= 1e-8);
  CHECK(max_derivative_error(make_params(0.4, 0.2, -0.7, 1.1), 128) <= 1e-8);
}

TEST_CASE("X and A") {
  const int grid = 64;
  const Eigen::MatrixXcd p = build_P(grid).matrix();
  CHECK((build_X(make_params(1, 0.3, 0, 1.2), grid).matrix() + p)
            .cwiseAbs()
            .maxCoeff() <= 1e-15);
  CHECK(build_A(make_params(0, 0, 0.5, 0.2), grid).matrix().cwiseAbs().maxCoeff() ==
        0.0);
  const Eigen::MatrixXcd x = build_X(hadamard_params(), 256).matrix();
  CHECK(band_limited_norm(x - x.adjoint(), 256) <= 1e-8);
  const Eigen::MatrixXcd a = build_A(hadamard_params(), 256).matrix();
  CHECK(band_limited_norm(a - a.adjoint(), 256) <= 1e-8);
}

TEST_CASE("norms") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 1) = 2.0;
  m(2, 2) = Complex(0, -5);
  CHECK(spectral_norm(m) == doctest::Approx(5.0));
  const int grid = 32;
  // A high Fourier mode is invisible to the band-limited norm.
  const Eigen::VectorXcd hi =
      sampled(grid, [](double k) { return std::polar(1.0, 15 * k); });
  const Eigen::MatrixXcd proj = hi * hi.adjoint();
  CHECK(band_limited_norm(proj, grid) <= 1e-12);
  CHECK(spectral_norm(proj) == doctest::Approx(hi.squaredNorm()));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * grid, 2 * grid);
  CHECK(band_limited_norm(id, grid) == doctest::Approx(1.0));
}

TEST_CASE("commutator identities, special coins") {
  const IdentityResiduals z = check_identities(make_params(0, 0, 0.7, 0.4), 128);
  CHECK(z.max() <= 1e-12);
  const IdentityResiduals d = check_identities(make_params(1, 0, 0, 0), 128);
  CHECK(d.r_XU_UV <= 1e-10);
  CHECK(d.max() <= 1e-10);
  const IdentityResiduals h = check_identities(hadamard_params(), 256);
  CHECK(h.max() <= 1e-8);
  CHECK(h.r_norm_u <= 1e-12);
  CHECK(h.r_commute_UV <= 1e-12);
  CHECK(h.r_commute_UH <= 1e-12);
}

TEST_CASE("commutator identities, random coins") {
  std::mt19937_64 rng(kSeed + 50);
  for (int t = 0; t < 3; ++t) {
    const CoinParams p = random_coin(rng, 0.1, 0.9);
    const IdentityResiduals r = check_identities(p, 256);
    CHECK(std::isfinite(r.max()));
    CHECK(r.max() <= 1e-8);
  }
}

TEST_CASE("blockwise structure") {
  const CoinParams p = make_params(0.6, 0.4, -1.2, 2.5);
  const int grid = 32;
  const Eigen::MatrixXcd u = build_U(p, grid).matrix();
  const Eigen::MatrixXcd v = build_V(p, grid).matrix();
  const Eigen::MatrixXcd h = build_H(p, grid).matrix();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * grid, 2 * grid);
  CHECK((u.adjoint() * u - id).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((v - v.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  for (int m = 0; m < grid; ++m) {
    const double k = KGridOperator::k(m, grid);
    CHECK((u.block<2, 2>(2 * m, 2 * m) - symbol_at(p, k)).norm() <= 1e-15);
    CHECK((v.block<2, 2>(2 * m, 2 * m) - V_hat(p, k)).norm() <= 1e-15);
    CHECK((h.block<2, 2>(2 * m, 2 * m) - H_hat(p, k)).norm() <= 1e-14);
  }
}

TEST_CASE("virial check") {
  for (double delta : {0.0, kPi / 3}) {
    const VirialReport r = virial_check(make_params(0, 0, 0.2, delta), 128);
    CHECK(r.vectors == 10);
    CHECK(r.max_pairing <= 1e-12);
    CHECK(r.max_eigen_residual <= 1e-12);
  }
  CHECK_THROWS_AS(virial_check(hadamard_params(), 128), ValidationError);
}

TEST_CASE("velocity spectrum fills [-a, a]") {
  for (double a : {0.2, kInvSqrt2, 0.9}) {
    const int grid = 256;
    const std::vector<double> v =
        velocity_spectrum(make_params(a, 0.3, 0.1, -0.4), grid);
    CHECK(v.front() >= -a - 1e-14);
    CHECK(v.back() <= a + 1e-14);
    CHECK(v.front() + a <= kTwoPi / grid);
    CHECK(a - v.back() <= kTwoPi / grid);
  }
  const std::vector<double> z = velocity_spectrum(make_params(0, 0, 0, 0), 32);
  CHECK(std::all_of(z.begin(), z.end(), [](double x) { return x == 0.0; }));
}

}  // TEST_SUITE
