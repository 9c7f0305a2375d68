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

#include "qwalk/coin.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "qwalk/angles.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

double op_norm(const Matrix2c& m) {
  const double trace = m.squaredNorm();
  const double det = std::norm(m.determinant());
  const double disc = std::max(0.0, trace * trace - 4.0 * det);
  return std::sqrt(0.5 * (trace + std::sqrt(disc)));
}

CoinMatrix::CoinMatrix(const Matrix2c& m) : m_(m) {
  if (!m.allFinite()) throw ValidationError("coin has non-finite entries");
  const double defect = op_norm(m.adjoint() * m - Matrix2c::Identity());
  if (defect > kUnitarityTol) {
    std::ostringstream os;
    os << "coin is not unitary: ||C*C - I||_op = " << defect << " exceeds "
       << kUnitarityTol;
    throw ValidationError(os.str());
  }
  const double det_defect = std::abs(std::abs(m.determinant()) - 1.0);
  if (det_defect > kUnitarityTol) {
    std::ostringstream os;
    os << "coin determinant has modulus off by " << det_defect
       << ", exceeds " << kUnitarityTol;
    throw ValidationError(os.str());
  }
}

void validate(const CoinParams& p) {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(p.a) || !in_unit(p.b)) {
    throw ValidationError("coin params require a, b in [0, 1]");
  }
  const double defect = std::abs(p.a * p.a + p.b * p.b - 1.0);
  if (defect > kUnitarityTol) {
    std::ostringstream os;
    os << "coin params violate a^2 + b^2 = 1 (off by " << defect << ")";
    throw ValidationError(os.str());
  }
}

CoinParams make_params(double a, double alpha, double beta, double delta) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw ValidationError("coin params require a in [0, 1]");
  }
  CoinParams p;
  p.a = a;
  p.b = std::sqrt(std::max(0.0, 1.0 - a * a));
  p.alpha = wrap_signed(alpha);
  p.beta = wrap_signed(beta);
  p.delta = wrap_signed(delta);
  return p;
}

CoinCase coin_case(const CoinParams& p) {
  if (p.a < kDegeneracyTol) return CoinCase::kZeroDiagonal;
  if (1.0 - p.a < kDegeneracyTol) return CoinCase::kDiagonal;
  return CoinCase::kGeneric;
}

CoinParams parametrize(const CoinMatrix& c) {
  CoinParams p;
  p.a = std::abs(c(0, 0));
  p.b = std::abs(c(0, 1));
  p.delta = wrap_signed(std::arg(c.matrix().determinant()));
  p.alpha = p.a < kDegeneracyTol ? 0.0 : wrap_signed(std::arg(c(0, 0)));
  p.beta = p.b < kDegeneracyTol ? 0.0 : wrap_signed(std::arg(c(0, 1)));
  return p;
}

CoinParams parametrize(const Matrix2c& c) { return parametrize(CoinMatrix(c)); }

CoinMatrix reconstruct(const CoinParams& p) {
  validate(p);
  // Entries of the parametrized form with the e^{i delta/2} prefactor
  // multiplied through.
  Matrix2c m;
  m(0, 0) = std::polar(p.a, p.alpha);
  m(0, 1) = std::polar(p.b, p.beta);
  m(1, 0) = -std::polar(p.b, p.delta - p.beta);
  m(1, 1) = std::polar(p.a, p.delta - p.alpha);
  return CoinMatrix(m);
}

Matrix2c rotation(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2c r;
  r << c, -s, s, c;
  return r;
}

CoinField::CoinField(std::string family, Rule rule, CoinMatrix left,
                     CoinMatrix right, TailBound left_tail,
                     TailBound right_tail)
    : family_(std::move(family)),
      rule_(std::move(rule)),
      left_(left),
      right_(right),
      left_tail_(left_tail),
      right_tail_(right_tail) {
  if (!rule_) throw ValidationError("coin field needs a rule");
  if (!(left_tail_.kappa > 0.0 && left_tail_.eps > 0.0 &&
        right_tail_.kappa > 0.0 && right_tail_.eps > 0.0)) {
    throw ValidationError("short-range constants kappa, eps must be > 0");
  }
}

CoinField constant_field(const CoinMatrix& c) {
  const Matrix2c m = c.matrix();
  return CoinField("constant", [m](Site) { return m; }, c, c);
}

Matrix2c two_phase_coin(double sigma) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix2c m;
  m << s, s * std::polar(1.0, sigma), s * std::polar(1.0, -sigma), -s;
  return m;
}

CoinField two_phase(double sigma_plus, double sigma_minus, bool with_defect) {
  const Matrix2c plus = two_phase_coin(wrap_positive(sigma_plus));
  const Matrix2c minus = two_phase_coin(wrap_positive(sigma_minus));
  Matrix2c defect;
  defect << 1.0, 0.0, 0.0, -1.0;
  auto rule = [plus, minus, defect, with_defect](Site x) -> Matrix2c {
    if (with_defect && x == 0) return defect;
    return x >= 0 ? plus : minus;
  };
  return CoinField(with_defect ? "two_phase_defect" : "two_phase", rule,
                   CoinMatrix(minus), CoinMatrix(plus));
}

CoinField split_step_profile(double theta_minus, double theta_plus,
                             double scale) {
  if (!(scale > 0.0)) throw ValidationError("split_step scale must be > 0");
  const double mid = 0.5 * (theta_minus + theta_plus);
  const double half = 0.5 * (theta_plus - theta_minus);
  auto rule = [mid, half, scale](Site x) {
    return rotation(mid + half * std::tanh(static_cast<double>(x) / scale));
  };
  const double spread = std::abs(theta_plus - theta_minus);
  const TailBound tail{spread > 0.0 ? spread : 1.0, 1.0};
  return CoinField("split_step", rule, CoinMatrix(rotation(theta_minus)),
                   CoinMatrix(rotation(theta_plus)), tail, tail);
}

CoinField table_field(std::map<Site, CoinMatrix> sites, CoinMatrix left,
                      CoinMatrix right, TailBound left_tail,
                      TailBound right_tail) {
  const Matrix2c l = left.matrix();
  const Matrix2c r = right.matrix();
  auto rule = [table = std::move(sites), l, r](Site x) -> Matrix2c {
    if (auto it = table.find(x); it != table.end()) return it->second.matrix();
    return x < 0 ? l : r;
  };
  return CoinField("table", rule, left, right, left_tail, right_tail);
}

CoinField with_global_phase(const CoinField& f, double phi) {
  const Complex phase = std::polar(1.0, phi);
  auto rule = [f, phase](Site x) -> Matrix2c { return phase * f.raw(x); };
  return CoinField(f.family(), rule, CoinMatrix(phase * f.left().matrix()),
                   CoinMatrix(phase * f.right().matrix()), f.left_tail(),
                   f.right_tail());
}

ShortRangeReport verify_short_range(const CoinField& f, Site lo, Site hi,
                                    double kappa, double eps) {
  if (lo > hi) throw ValidationError("short-range window is empty");
  if (!(kappa > 0.0) || !(eps > 0.0)) {
    throw ValidationError("short-range check needs kappa > 0 and eps > 0");
  }
  ShortRangeReport report;
  for (Site x = lo; x <= hi; ++x) {
    if (x == 0) continue;
    const Matrix2c& tail = x < 0 ? f.left().matrix() : f.right().matrix();
    const double dev = op_norm(f.at(x).matrix() - tail);
    const double bound =
        kappa * std::pow(std::abs(static_cast<double>(x)), -1.0 - eps);
    const double ratio = dev / bound;
    ++report.checked;
    if (ratio > report.worst_ratio || report.checked == 1) {
      report.worst_ratio = ratio;
      report.worst_site = x;
    }
  }
  report.pass = report.worst_ratio <= 1.0;
  return report;
}

}  // namespace qwalk
