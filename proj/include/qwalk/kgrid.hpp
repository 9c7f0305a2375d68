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

#include <Eigen/Dense>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Dense operator on C^2-valued functions sampled at k_m = 2 pi m / K.
/// Basis index of (m, c) is 2m + c.
class KGridOperator {
 public:
  KGridOperator(int grid, Eigen::MatrixXcd matrix);

  int grid() const { return grid_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  static double k(int m, int grid);

 private:
  int grid_;
  Eigen::MatrixXcd matrix_;
};

/// Throws ValidationError unless K is a power of two and K >= 32.
void validate_grid(int grid);

/// Spectral derivative -i d/dk: eigenvalue n on the Fourier mode e^{ink},
/// n in [-K/2, K/2).
KGridOperator build_P(int grid);

/// Block-diagonal symbols sampled on the grid.
KGridOperator build_U(const CoinParams& p, int grid);
KGridOperator build_V(const CoinParams& p, int grid);
KGridOperator build_H(const CoinParams& p, int grid);

/// -sum_j (|u_j><u_j| P - i |u_j><u_j'|), with u_j' in closed form.
KGridOperator build_X(const CoinParams& p, int grid);

/// (X V + V X) / 2.
KGridOperator build_A(const CoinParams& p, int grid);

/// ||R restricted to trigonometric polynomials of degree <= K/4||_op. The
/// commutator identities hold in the form sense on trigonometric
/// polynomials; on the grid they hold up to aliasing, which this
/// restriction keeps exponentially small for analytic symbols.
double band_limited_norm(const Eigen::MatrixXcd& r, int grid);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& m);

struct IdentityResiduals {
  double r_XV_H = 0.0;        // [iX, V] - H
  double r_XU_UV = 0.0;       // [X, U] - U V
  double r_A_V2 = 0.0;        // U^{-1} [A, U] - V^2
  double r_commute_UV = 0.0;  // [U, V]
  double r_commute_UH = 0.0;  // [U, H]
  double r_norm_u = 0.0;      // sum_j |u_j><u_j| - I

  double max() const;
};

/// Operator-norm residuals of the commutator identities at grid size K.
/// Commutators with P are formed entrywise, p(m - m')(M(k_m') - M(k_m)),
/// rather than as differences of products.
IdentityResiduals check_identities(const CoinParams& p, int grid);

struct VirialReport {
  int vectors = 0;
  double max_pairing = 0.0;         // max |<phi, U^{-1}[A, U] phi>|
  double max_eigen_residual = 0.0;  // max ||U phi - lambda phi||
};

/// For a = 0 only: pairs U^{-1}[A, U] with grid eigenvectors
/// u_j(k) e^{ink} / sqrt(K), |n| <= 2.
VirialReport virial_check(const CoinParams& p, int grid);

/// Eigenvalues of V(k_m) over the grid, sorted.
std::vector<double> velocity_spectrum(const CoinParams& p, int grid);

}  // namespace qwalk
