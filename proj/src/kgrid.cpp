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

#include "qwalk/kgrid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/angles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/symbol.hpp"

namespace qwalk {
namespace {

using Blocks = std::vector<Matrix2c>;

// First column of the circulant matrix of P: p(d) = (1/K) sum_n n e^{2 pi i n d/K}.
std::vector<Complex> derivative_stencil(int grid) {
  std::vector<Complex> col(static_cast<std::size_t>(grid));
  const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
  for (int d = 0; d <= grid / 2; ++d) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (int n = -grid / 2; n < grid / 2; ++n) {
      // Reduce n d mod K exactly before forming the angle.
      const long long r = ((static_cast<long long>(n) * d) % grid + grid) % grid;
      const long double x = two_pi * static_cast<long double>(r) / grid;
      re += n * std::cos(x);
      im += n * std::sin(x);
    }
    col[static_cast<std::size_t>(d)] =
        Complex(static_cast<double>(re / grid), static_cast<double>(im / grid));
  }
  for (int d = grid / 2 + 1; d < grid; ++d) {
    col[static_cast<std::size_t>(d)] =
        std::conj(col[static_cast<std::size_t>(grid - d)]);
  }
  return col;
}

Complex stencil_at(const std::vector<Complex>& col, int m, int mp) {
  const int grid = static_cast<int>(col.size());
  return col[static_cast<std::size_t>(((m - mp) % grid + grid) % grid)];
}

struct Symbols {
  Blocks u, v, h, pi, b;  // U, V, H, sum_j |u_j><u_j|, sum_j |u_j><u_j'|
};

Symbols sample(const CoinParams& p, int grid) {
  Symbols s;
  const auto n = static_cast<std::size_t>(grid);
  for (Blocks* blocks : {&s.u, &s.v, &s.h, &s.pi, &s.b}) blocks->resize(n);
  const Matrix2c coin = reconstruct(p).matrix();
  for (int m = 0; m < grid; ++m) {
    const double k = KGridOperator::k(m, grid);
    const SymbolEigen e = eigenpairs(p, k);
    const auto du = eigenvector_derivatives(p, k);
    Matrix2c shift = Matrix2c::Zero();
    shift(0, 0) = std::polar(1.0, k);
    shift(1, 1) = std::polar(1.0, -k);
    const auto i = static_cast<std::size_t>(m);
    s.u[i] = shift * coin;
    s.v[i].setZero();
    s.h[i].setZero();
    s.pi[i].setZero();
    s.b[i].setZero();
    for (Band j : kBands) {
      const int b = band_index(j);
      const Matrix2c proj = e.u[b] * e.u[b].adjoint();
      s.v[i] += e.v[b] * proj;
      s.h[i] -= velocity_derivative(p, k, j) * proj;
      s.pi[i] += proj;
      s.b[i] += e.u[b] * du[b].adjoint();
    }
  }
  return s;
}

Eigen::MatrixXcd dense(const Blocks& blocks) {
  const auto grid = static_cast<Eigen::Index>(blocks.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * grid, 2 * grid);
  for (Eigen::Index i = 0; i < grid; ++i) {
    m.block<2, 2>(2 * i, 2 * i) = blocks[static_cast<std::size_t>(i)];
  }
  return m;
}

Blocks product(const Blocks& x, const Blocks& y) {
  Blocks out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return out;
}

Blocks commutator(const Blocks& x, const Blocks& y) {
  Blocks out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i] - y[i] * x[i];
  return out;
}

// Dense X = -Pi P + i B.
Eigen::MatrixXcd dense_X(const Symbols& s, const std::vector<Complex>& stencil) {
  const int grid = static_cast<int>(stencil.size());
  Eigen::MatrixXcd x(2 * grid, 2 * grid);
  for (int m = 0; m < grid; ++m) {
    for (int mp = 0; mp < grid; ++mp) {
      Matrix2c blk = -stencil_at(stencil, m, mp) * s.pi[static_cast<std::size_t>(m)];
      if (m == mp) blk += Complex(0.0, 1.0) * s.b[static_cast<std::size_t>(m)];
      x.block<2, 2>(2 * m, 2 * mp) = blk;
    }
  }
  return x;
}

// [X, M] for block-diagonal M, using [Pi P, M] = Pi [P, M] + [Pi, M] P and
// [P, M]_{m m'} = p(m - m') (M_{m'} - M_m).
Eigen::MatrixXcd commutator_X(const Symbols& s,
                              const std::vector<Complex>& stencil,
                              const Blocks& mult) {
  const int grid = static_cast<int>(stencil.size());
  const Blocks pi_m = commutator(s.pi, mult);
  const Blocks b_m = commutator(s.b, mult);
  Eigen::MatrixXcd out(2 * grid, 2 * grid);
  for (int m = 0; m < grid; ++m) {
    const auto i = static_cast<std::size_t>(m);
    for (int mp = 0; mp < grid; ++mp) {
      const auto ip = static_cast<std::size_t>(mp);
      const Complex pd = stencil_at(stencil, m, mp);
      Matrix2c blk = -pd * (s.pi[i] * (mult[ip] - mult[i]) + pi_m[i]);
      if (m == mp) blk += Complex(0.0, 1.0) * b_m[i];
      out.block<2, 2>(2 * m, 2 * mp) = blk;
    }
  }
  return out;
}

// Left / right multiplication of a dense matrix by a block-diagonal one.
Eigen::MatrixXcd left_mul(const Blocks& d, const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(2 * i);
    out.middleRows<2>(r) = d[i] * m.middleRows<2>(r);
  }
  return out;
}

Eigen::MatrixXcd right_mul(const Eigen::MatrixXcd& m, const Blocks& d) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(2 * i);
    out.middleCols<2>(c) = m.middleCols<2>(c) * d[i];
  }
  return out;
}

double max_block_norm(const Blocks& blocks) {
  double worst = 0.0;
  for (const Matrix2c& b : blocks) worst = std::max(worst, op_norm(b));
  return worst;
}

}  // namespace

KGridOperator::KGridOperator(int grid, Eigen::MatrixXcd matrix)
    : grid_(grid), matrix_(std::move(matrix)) {}

double KGridOperator::k(int m, int grid) {
  return kTwoPi * static_cast<double>(m) / static_cast<double>(grid);
}

void validate_grid(int grid) {
  if (grid < 32 || (grid & (grid - 1)) != 0) {
    std::ostringstream os;
    os << "grid size K must be a power of two >= 32 (got " << grid << ")";
    throw ValidationError(os.str());
  }
}

KGridOperator build_P(int grid) {
  validate_grid(grid);
  const std::vector<Complex> stencil = derivative_stencil(grid);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * grid, 2 * grid);
  for (int r = 0; r < grid; ++r) {
    for (int c = 0; c < grid; ++c) {
      const Complex v = stencil_at(stencil, r, c);
      m(2 * r, 2 * c) = v;
      m(2 * r + 1, 2 * c + 1) = v;
    }
  }
  return KGridOperator(grid, std::move(m));
}

KGridOperator build_U(const CoinParams& p, int grid) {
  validate_grid(grid);
  return KGridOperator(grid, dense(sample(p, grid).u));
}

KGridOperator build_V(const CoinParams& p, int grid) {
  validate_grid(grid);
  return KGridOperator(grid, dense(sample(p, grid).v));
}

KGridOperator build_H(const CoinParams& p, int grid) {
  validate_grid(grid);
  return KGridOperator(grid, dense(sample(p, grid).h));
}

KGridOperator build_X(const CoinParams& p, int grid) {
  validate_grid(grid);
  return KGridOperator(grid, dense_X(sample(p, grid), derivative_stencil(grid)));
}

KGridOperator build_A(const CoinParams& p, int grid) {
  validate_grid(grid);
  const Symbols s = sample(p, grid);
  const Eigen::MatrixXcd x = dense_X(s, derivative_stencil(grid));
  return KGridOperator(grid, 0.5 * (right_mul(x, s.v) + left_mul(s.v, x)));
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXcd gram =
      m.rows() >= m.cols() ? Eigen::MatrixXcd(m.adjoint() * m)
                           : Eigen::MatrixXcd(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                     Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double band_limited_norm(const Eigen::MatrixXcd& r, int grid) {
  const int band = grid / 4;
  const int modes = 2 * band + 1;
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(2 * grid, 2 * modes);
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid));
  for (int j = 0; j < modes; ++j) {
    const int n = j - band;
    for (int m = 0; m < grid; ++m) {
      const long long red = ((static_cast<long long>(n) * m) % grid + grid) % grid;
      const Complex e = std::polar(scale, kTwoPi * static_cast<double>(red) / grid);
      basis(2 * m, 2 * j) = e;
      basis(2 * m + 1, 2 * j + 1) = e;
    }
  }
  return spectral_norm(r * basis);
}

double IdentityResiduals::max() const {
  return std::max({r_XV_H, r_XU_UV, r_A_V2, r_commute_UV, r_commute_UH,
                   r_norm_u});
}

IdentityResiduals check_identities(const CoinParams& p, int grid) {
  validate_grid(grid);
  const Symbols s = sample(p, grid);
  const std::vector<Complex> stencil = derivative_stencil(grid);
  IdentityResiduals res;

  // [iX, V] - H
  const Eigen::MatrixXcd xv = commutator_X(s, stencil, s.v);
  res.r_XV_H = band_limited_norm(Complex(0.0, 1.0) * xv - dense(s.h), grid);

  // [X, U] - U V
  const Eigen::MatrixXcd xu = commutator_X(s, stencil, s.u);
  res.r_XU_UV = band_limited_norm(xu - dense(product(s.u, s.v)), grid);

  // [A, U] = (X [V, U] + [X, U] V + V [X, U] + [V, U] X) / 2
  const Eigen::MatrixXcd x = dense_X(s, stencil);
  const Blocks vu = commutator(s.v, s.u);
  const Eigen::MatrixXcd au =
      0.5 * (right_mul(x, vu) + right_mul(xu, s.v) + left_mul(s.v, xu) +
             left_mul(vu, x));
  Blocks u_inv(s.u.size());
  for (std::size_t i = 0; i < s.u.size(); ++i) u_inv[i] = s.u[i].adjoint();
  res.r_A_V2 = band_limited_norm(
      left_mul(u_inv, au) - dense(product(s.v, s.v)), grid);

  res.r_commute_UV = max_block_norm(commutator(s.u, s.v));
  res.r_commute_UH = max_block_norm(commutator(s.u, s.h));
  Blocks id_defect(s.pi.size());
  for (std::size_t i = 0; i < s.pi.size(); ++i) {
    id_defect[i] = s.pi[i] - Matrix2c::Identity();
  }
  res.r_norm_u = max_block_norm(id_defect);
  return res;
}

VirialReport virial_check(const CoinParams& p, int grid) {
  validate_grid(grid);
  if (coin_case(p) != CoinCase::kZeroDiagonal) {
    throw ValidationError(
        "virial check needs a = 0: only then does the asymptotic walk have "
        "eigenvectors");
  }
  const Eigen::MatrixXcd u = build_U(p, grid).matrix();
  const Eigen::MatrixXcd a = build_A(p, grid).matrix();
  const Eigen::MatrixXcd pairing_op = u.adjoint() * (a * u - u * a);
  VirialReport rep;
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid));
  for (Band j : kBands) {
    for (int n = -2; n <= 2; ++n) {
      Eigen::VectorXcd phi(2 * grid);
      Complex lambda;
      for (int m = 0; m < grid; ++m) {
        const double k = KGridOperator::k(m, grid);
        const SymbolEigen e = eigenpairs(p, k);
        lambda = e.lambda[static_cast<std::size_t>(band_index(j))];
        const Complex wave = std::polar(scale, n * k);
        phi.segment<2>(2 * m) = wave * e.u[static_cast<std::size_t>(band_index(j))];
      }
      rep.max_eigen_residual =
          std::max(rep.max_eigen_residual, (u * phi - lambda * phi).norm());
      rep.max_pairing =
          std::max(rep.max_pairing, std::abs(phi.dot(pairing_op * phi)));
      ++rep.vectors;
    }
  }
  return rep;
}

std::vector<double> velocity_spectrum(const CoinParams& p, int grid) {
  validate_grid(grid);
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(grid));
  for (int m = 0; m < grid; ++m) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(
        V_hat(p, KGridOperator::k(m, grid)));
    out.push_back(es.eigenvalues()(0));
    out.push_back(es.eigenvalues()(1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qwalk
