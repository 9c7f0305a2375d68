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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/spectra.hpp"

namespace qwalk {

/// Periodic truncation of U = S C to the ring x in [-N/2, N/2). Basis index
/// of (x, c) is 2 (x + N/2) + c. The shift wraps, so the ring carries a
/// second coin interface (the seam) at x = -N/2 / N/2 - 1 besides whatever
/// the field has near 0.
class RingOperator {
 public:
  RingOperator(int sites, Eigen::MatrixXcd matrix)
      : sites_(sites), matrix_(std::move(matrix)) {}

  int sites() const { return sites_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Site position(int index) const { return index - sites_ / 2; }

 private:
  int sites_;
  Eigen::MatrixXcd matrix_;
};

RingOperator build_ring(const CoinField& f, int sites);

enum class StateClass { kBulk, kGapLocalized, kThresholdAdjacent };

const char* to_string(StateClass c);

struct EigReport {
  double phase = 0.0;     // in [0, 2pi)
  double residual = 0.0;  // ||U phi - e^{i phase} phi||
  double ipr = 0.0;       // sum_x p(x)^2
  double com = 0.0;       // circular centre of mass, in [-N/2, N/2)
  int width99 = 0;        // shortest circular window holding 99% of mass
  std::optional<StateClass> classification;
  double nearest_threshold_dist = 0.0;
  std::vector<double> probability;  // p(x) by ring index
};

/// Upper bound on the eigen-residual; exceeding it is a NumericalError.
inline constexpr double kEigResidualTol = 1e-8;

/// Full eigendecomposition via a complex Schur factorization (LAPACK zgees).
/// Numerically degenerate clusters are rotated to diagonalize cos(2 pi x / N)
/// inside the cluster, which separates states sitting at the defect from
/// states at the seam. Reports are sorted by phase.
std::vector<EigReport> eig(const RingOperator& r);

/// Eigenphases only, sorted; same factorization as eig.
std::vector<double> eigenphases(const RingOperator& r);

struct GapState {
  double phase = 0.0;
  int gap_index = -1;
  std::string interface;  // "defect" (|com| <= N/4) or "seam"
  double com = 0.0;
  int width99 = 0;
  double ipr = 0.0;
};

struct ClassificationSummary {
  int bulk = 0;
  int gap_localized = 0;
  int threshold_adjacent = 0;
  std::vector<int> per_gap;  // gap_localized counts, indexed like gaps(ess)
  int defect_states = 0;
  int seam_states = 0;
  std::vector<GapState> gap_states;
};

inline constexpr double kDefaultGapMargin = 0.05;
inline constexpr double kDefaultLocFrac = 0.125;
/// Angular slack for deciding that an eigenphase lies on the essential arcs.
inline constexpr double kMembershipTol = 1e-9;

/// Labels every report in place and tallies the gap-localized states.
ClassificationSummary classify(std::vector<EigReport>& reports,
                               const SpectralArcs& ess,
                               const ThresholdSet& tau,
                               double gap_margin = kDefaultGapMargin,
                               double loc_frac = kDefaultLocFrac);

struct CoverageReport {
  double inside_fraction = 0.0;
  int outside_count = 0;
  std::vector<int> histogram;  // counts over equal bins of [0, 2pi)
  double arc_coverage = 0.0;   // max over arc samples of distance to a phase
};

CoverageReport spectral_histogram(const std::vector<double>& phases,
                                  const SpectralArcs& ess, int bins);
CoverageReport spectral_histogram(const std::vector<EigReport>& reports,
                                  const SpectralArcs& ess, int bins);

/// Least-squares slope of log p against circular distance from the centre of
/// mass, over the middle half of the tail above the rounding floor. Negative
/// for exponentially localized states; NaN if too few points.
double tail_slope(const EigReport& r);

}  // namespace qwalk
