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

#include "qwalk/finite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "qwalk/angles.hpp"
#include "qwalk/error.hpp"

namespace qwalk {
namespace {

// Eigenphases closer than this are treated as one degenerate cluster.
constexpr double kClusterTol = 1e-9;

struct Schur {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

Schur schur(const Eigen::MatrixXcd& m, bool want_vectors) {
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::MatrixXcd t = m;
  Schur out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_zgees(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'N', nullptr, n, t.data(),
      n, &sdim, out.values.data(),
      want_vectors ? out.vectors.data() : nullptr, n);
  if (info != 0) {
    std::ostringstream os;
    os << "Schur factorization failed (zgees info = " << info << ")";
    throw NumericalError(os.str());
  }
  return out;
}

std::vector<std::vector<int>> phase_clusters(const std::vector<double>& phase) {
  std::vector<int> order(phase.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return phase[x] < phase[y]; });
  std::vector<std::vector<int>> clusters;
  for (int i : order) {
    if (!clusters.empty() &&
        phase[i] - phase[clusters.back().back()] <= kClusterTol) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }
  if (clusters.size() >= 2 &&
      circular_distance(phase[clusters.back().back()],
                        phase[clusters.front().front()]) <= kClusterTol) {
    auto& last = clusters.back();
    last.insert(last.end(), clusters.front().begin(), clusters.front().end());
    clusters.erase(clusters.begin());
  }
  return clusters;
}

int width_holding(const std::vector<double>& p, double fraction) {
  const int n = static_cast<int>(p.size());
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  const double target = fraction * total;
  std::vector<double> prefix(2 * static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < 2 * n; ++i) prefix[i + 1] = prefix[i] + p[i % n];
  int best = n;
  int end = 0;
  for (int start = 0; start < n; ++start) {
    end = std::max(end, start);
    while (end < start + n && prefix[end] - prefix[start] < target) ++end;
    if (prefix[end] - prefix[start] >= target) {
      best = std::min(best, end - start);
    }
  }
  return best;
}

}  // namespace

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::kBulk:
      return "bulk";
    case StateClass::kGapLocalized:
      return "gap_localized";
    case StateClass::kThresholdAdjacent:
      return "threshold_adjacent";
  }
  return "unknown";
}

RingOperator build_ring(const CoinField& f, int sites) {
  if (sites < 8 || sites % 2 != 0) {
    throw ValidationError("ring needs an even number of sites N >= 8");
  }
  const int n = sites;
  std::vector<Matrix2c> coin(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    coin[static_cast<std::size_t>(i)] = f.at(i - n / 2).matrix();
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const int up = (i + 1) % n;      // (U psi)_0(x) = (C psi)_0(x + 1)
    const int down = (i + n - 1) % n;  // (U psi)_1(x) = (C psi)_1(x - 1)
    for (int c = 0; c < 2; ++c) {
      u(2 * i, 2 * up + c) = coin[static_cast<std::size_t>(up)](0, c);
      u(2 * i + 1, 2 * down + c) = coin[static_cast<std::size_t>(down)](1, c);
    }
  }
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(2 * n, 2 * n))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kUnitarityTol) {
    std::ostringstream os;
    os << "ring operator is not unitary (max defect " << defect << ")";
    throw NumericalError(os.str());
  }
  return RingOperator(n, std::move(u));
}

std::vector<double> eigenphases(const RingOperator& r) {
  const Schur s = schur(r.matrix(), false);
  std::vector<double> phases(static_cast<std::size_t>(s.values.size()));
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    phases[static_cast<std::size_t>(i)] = wrap_positive(std::arg(s.values(i)));
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

std::vector<EigReport> eig(const RingOperator& r) {
  const int n = r.sites();
  const Eigen::MatrixXcd& u = r.matrix();
  Schur s = schur(u, true);
  Eigen::MatrixXcd& z = s.vectors;

  std::vector<double> phase(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) {
    phase[static_cast<std::size_t>(i)] = wrap_positive(std::arg(s.values(i)));
  }

  Eigen::VectorXd position_weight(2 * n);
  for (int i = 0; i < n; ++i) {
    const double w = std::cos(kTwoPi * static_cast<double>(r.position(i)) / n);
    position_weight(2 * i) = w;
    position_weight(2 * i + 1) = w;
  }
  for (const auto& cluster : phase_clusters(phase)) {
    if (cluster.size() < 2) continue;
    const auto m = static_cast<Eigen::Index>(cluster.size());
    Eigen::MatrixXcd block(2 * n, m);
    for (Eigen::Index c = 0; c < m; ++c) block.col(c) = z.col(cluster[c]);
    const Eigen::MatrixXcd q = block.householderQr().householderQ() *
                               Eigen::MatrixXcd::Identity(2 * n, m);
    const Eigen::MatrixXcd proj =
        q.adjoint() * position_weight.asDiagonal() * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(proj);
    const Eigen::MatrixXcd rotated = q * es.eigenvectors();
    for (Eigen::Index c = 0; c < m; ++c) z.col(cluster[c]) = rotated.col(c);
  }

  const Eigen::MatrixXcd uz = u * z;
  std::vector<EigReport> reports(static_cast<std::size_t>(2 * n));
  for (int col = 0; col < 2 * n; ++col) {
    const Eigen::VectorXcd phi = z.col(col).normalized();
    const Eigen::VectorXcd uphi = uz.col(col) / z.col(col).norm();
    const Complex rayleigh = phi.dot(uphi);
    EigReport& rep = reports[static_cast<std::size_t>(col)];
    rep.phase = wrap_positive(std::arg(rayleigh));
    rep.residual = (uphi - std::polar(1.0, rep.phase) * phi).norm();
    if (!(rep.residual <= kEigResidualTol)) {
      std::ostringstream os;
      os << "eigen-residual " << rep.residual << " exceeds "
         << kEigResidualTol;
      throw NumericalError(os.str());
    }
    rep.probability.resize(static_cast<std::size_t>(n));
    Complex moment(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const double p = std::norm(phi(2 * i)) + std::norm(phi(2 * i + 1));
      rep.probability[static_cast<std::size_t>(i)] = p;
      rep.ipr += p * p;
      moment += p * std::polar(1.0, kTwoPi * static_cast<double>(
                                                 r.position(i)) / n);
    }
    rep.com = std::arg(moment) * n / kTwoPi;
    if (rep.com >= n / 2.0) rep.com -= n;
    rep.width99 = width_holding(rep.probability, 0.99);
  }
  std::sort(reports.begin(), reports.end(),
            [](const EigReport& x, const EigReport& y) {
              return x.phase < y.phase;
            });
  return reports;
}

ClassificationSummary classify(std::vector<EigReport>& reports,
                               const SpectralArcs& ess,
                               const ThresholdSet& tau, double gap_margin,
                               double loc_frac) {
  if (!(gap_margin > 0.0)) throw ValidationError("gap_margin must be > 0");
  if (!(loc_frac > 0.0)) throw ValidationError("loc_frac must be > 0");
  const SpectralArcs gap_arcs = gaps(ess);
  ClassificationSummary sum;
  sum.per_gap.assign(gap_arcs.arcs.size(), 0);
  for (EigReport& rep : reports) {
    const auto n = static_cast<double>(rep.probability.size());
    rep.nearest_threshold_dist = tau.distance(rep.phase);
    if (contains(ess, rep.phase, kMembershipTol)) {
      rep.classification = StateClass::kBulk;
      ++sum.bulk;
      continue;
    }
    if (rep.nearest_threshold_dist > gap_margin &&
        rep.width99 <= loc_frac * n) {
      rep.classification = StateClass::kGapLocalized;
      ++sum.gap_localized;
      GapState g;
      g.phase = rep.phase;
      for (std::size_t i = 0; i < gap_arcs.arcs.size(); ++i) {
        if (contains(SpectralArcs{{gap_arcs.arcs[i]}, {}}, rep.phase, 0.0)) {
          g.gap_index = static_cast<int>(i);
          ++sum.per_gap[i];
          break;
        }
      }
      const bool at_defect = std::abs(rep.com) <= n / 4.0;
      g.interface = at_defect ? "defect" : "seam";
      ++(at_defect ? sum.defect_states : sum.seam_states);
      g.com = rep.com;
      g.width99 = rep.width99;
      g.ipr = rep.ipr;
      sum.gap_states.push_back(g);
    } else {
      rep.classification = StateClass::kThresholdAdjacent;
      ++sum.threshold_adjacent;
    }
  }
  return sum;
}

CoverageReport spectral_histogram(const std::vector<double>& phases_in,
                                  const SpectralArcs& ess, int bins) {
  if (bins < 16) throw ValidationError("spectral histogram needs bins >= 16");
  CoverageReport out;
  out.histogram.assign(static_cast<std::size_t>(bins), 0);
  std::vector<double> phases;
  phases.reserve(phases_in.size());
  for (double p : phases_in) phases.push_back(wrap_positive(p));
  std::sort(phases.begin(), phases.end());
  int inside = 0;
  for (double p : phases) {
    if (contains(ess, p, kMembershipTol)) ++inside;
    const int b = std::min(bins - 1, static_cast<int>(p / kTwoPi * bins));
    ++out.histogram[static_cast<std::size_t>(b)];
  }
  const auto total = static_cast<int>(phases.size());
  out.outside_count = total - inside;
  out.inside_fraction = total > 0 ? static_cast<double>(inside) / total : 0.0;

  if (phases.empty()) return out;
  const auto nearest = [&](double g) {
    auto it = std::lower_bound(phases.begin(), phases.end(), g);
    const double after = it == phases.end() ? phases.front() : *it;
    const double before = it == phases.begin() ? phases.back() : *(it - 1);
    return std::min(circular_distance(g, after), circular_distance(g, before));
  };
  constexpr int kSamplesPerArc = 4096;
  for (const Arc& a : ess.arcs) {
    for (int i = 1; i < kSamplesPerArc; ++i) {
      const double g = wrap_positive(a.start + a.length * i / kSamplesPerArc);
      out.arc_coverage = std::max(out.arc_coverage, nearest(g));
    }
  }
  return out;
}

CoverageReport spectral_histogram(const std::vector<EigReport>& reports,
                                  const SpectralArcs& ess, int bins) {
  std::vector<double> phases;
  phases.reserve(reports.size());
  for (const EigReport& r : reports) phases.push_back(r.phase);
  return spectral_histogram(phases, ess, bins);
}

double tail_slope(const EigReport& r) {
  constexpr double kFloor = 1e-26;
  const auto n = static_cast<int>(r.probability.size());
  std::vector<std::pair<double, double>> pts;
  double d_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = r.probability[static_cast<std::size_t>(i)];
    if (p <= kFloor) continue;
    const double x = static_cast<double>(i - n / 2);
    double d = std::abs(std::remainder(x - r.com, static_cast<double>(n)));
    d_max = std::max(d_max, d);
    pts.emplace_back(d, std::log(p));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& [d, lp] : pts) {
    if (d < 0.25 * d_max || d > 0.75 * d_max) continue;
    sx += d;
    sy += lp;
    sxx += d * d;
    sxy += d * lp;
    ++count;
  }
  if (count < 3) return std::numeric_limits<double>::quiet_NaN();
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / denom;
}

}  // namespace qwalk
