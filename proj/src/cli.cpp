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

#include "qwalk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "qwalk/angles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/finite.hpp"
#include "qwalk/kgrid.hpp"
#include "qwalk/spectra.hpp"
#include "qwalk/symbol.hpp"

namespace qwalk::cli {
namespace {

constexpr int kMaxSites = 2048;
constexpr long kMaxSteps = 1000000;

double parse_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) {
    throw ValidationError(what + ": \"" + text + "\" is not a number");
  }
  return v;
}

std::string trim(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

// Which default output format a subcommand uses, and which it accepts.
std::string resolved_format(const RunConfig& c) {
  const std::string& s = c.subcommand;
  const bool tabular =
      s == "dispersion" || s == "evolve" || s == "velocity-hist";
  if (c.format.empty()) {
    if (tabular) return "csv";
    if (s == "check-commutators") return "text";
    return "json";
  }
  if (c.format == "csv" && !tabular) {
    throw ValidationError(s + " has no CSV output; use --format json");
  }
  if (c.format == "text" && s != "check-commutators") {
    throw ValidationError(s + " has no text output");
  }
  return c.format;
}

struct Sides {
  CoinParams left;
  CoinParams right;
  bool single = false;  // one constant coin given by --coin-params
};

Sides sides(const RunConfig& c) {
  if (c.coin_params) {
    const CoinParams p = to_params(*c.coin_params);
    return {p, p, true};
  }
  if (c.coin) {
    const CoinField f = build_field(*c.coin);
    return {parametrize(f.left()), parametrize(f.right()), false};
  }
  throw ValidationError(c.subcommand + " needs --coin or --coin-params");
}

CoinField field(const RunConfig& c) {
  if (c.coin) return build_field(*c.coin);
  if (c.coin_params) {
    return constant_field(reconstruct(to_params(*c.coin_params)));
  }
  throw ValidationError(c.subcommand + " needs --coin or --coin-params");
}

const CoinParams& single_coin(const RunConfig& c, CoinParams& storage) {
  if (!c.coin_params) {
    throw ValidationError(c.subcommand + " needs --coin-params a,alpha,beta,delta");
  }
  storage = to_params(*c.coin_params);
  return storage;
}

Json rounded(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(round12(x));
  return out;
}

Json arcs_json(const SpectralArcs& s) {
  Json arcs = Json::array();
  for (const Arc& a : s.arcs) {
    arcs.push_back({round12(a.start), round12(a.length)});
  }
  return arcs;
}

Json rho_json(const RhoValue& r) {
  if (r.is_infinite()) return "inf";
  return round12(r.value());
}

const char* side_name(Side s) {
  switch (s) {
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
    case Side::kBoth:
      return "both";
  }
  return "both";
}

Json thresholds_json(const ThresholdSet& t) {
  Json out = Json::array();
  for (const Threshold& th : t.points) out.push_back(round12(th.angle));
  return out;
}

Json header(const RunConfig& c) {
  Json j = Json::object();
  j["schema"] = 1;
  j["subcommand"] = c.subcommand;
  return j;
}

void validate_walk(const RunConfig& c) {
  if (c.steps < 0 || c.steps > kMaxSteps) {
    throw ValidationError("--steps must be in [0, " +
                          std::to_string(kMaxSteps) + "]");
  }
}

// Subcommands. Each validates its inputs before any heavy work and writes
// its whole output to `os`.

int cmd_arcs(const RunConfig& c, std::ostream& os) {
  const Sides s = sides(c);
  const SpectralArcs spec =
      s.single ? arcs(s.left) : essential_spectrum(s.left, s.right);
  Json j = header(c);
  j["arcs"] = arcs_json(spec);
  j["points"] = rounded(spec.points);
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_thresholds(const RunConfig& c, std::ostream& os) {
  const Sides s = sides(c);
  const ThresholdSet t = thresholds(s.left, s.right);
  Json j = header(c);
  j["thresholds"] = thresholds_json(t);
  Json origins = Json::array();
  for (const Threshold& th : t.points) origins.push_back(side_name(th.origin));
  j["origins"] = origins;
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_mourre(const RunConfig& c, std::ostream& os) {
  if (!c.theta) throw ValidationError("mourre needs --theta");
  const Sides s = sides(c);
  const double theta = wrap_positive(*c.theta);
  const RhoValue rho = s.single ? rho_tilde_asymptotic(s.left, theta)
                                : mourre_lower_bound(s.left, s.right, theta);
  Json j = header(c);
  j["theta"] = round12(theta);
  j["rho"] = rho_json(rho);
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_dispersion(const RunConfig& c, const std::string& fmt,
                   std::ostream& os) {
  CoinParams storage;
  const CoinParams& p = single_coin(c, storage);
  if (c.samples < 1) throw ValidationError("--samples must be >= 1");
  std::vector<SymbolEigen> rows;
  rows.reserve(static_cast<std::size_t>(c.samples));
  for (int m = 0; m < c.samples; ++m) {
    rows.push_back(eigenpairs(p, kTwoPi * m / c.samples));
  }
  if (fmt == "csv") {
    os << "k,re_lambda1,im_lambda1,re_lambda2,im_lambda2,v1,v2\n";
    for (const SymbolEigen& e : rows) {
      os << format12(e.k) << ',' << format12(e.lambda[0].real()) << ','
         << format12(e.lambda[0].imag()) << ','
         << format12(e.lambda[1].real()) << ','
         << format12(e.lambda[1].imag()) << ',' << format12(e.v[0]) << ','
         << format12(e.v[1]) << '\n';
    }
    return kExitOk;
  }
  Json j = header(c);
  Json pts = Json::array();
  for (const SymbolEigen& e : rows) {
    pts.push_back({{"k", round12(e.k)},
                   {"lambda1", {round12(e.lambda[0].real()),
                                round12(e.lambda[0].imag())}},
                   {"lambda2", {round12(e.lambda[1].real()),
                                round12(e.lambda[1].imag())}},
                   {"v1", round12(e.v[0])},
                   {"v2", round12(e.v[1])}});
  }
  j["dispersion"] = pts;
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_evolve(const RunConfig& c, const std::string& fmt, std::ostream& os) {
  validate_walk(c);
  const CoinField f = field(c);
  const WalkState init = parse_initial(c.initial);
  const ObservableReport r = observe(evolve(f, init, c.steps));
  if (fmt == "csv") {
    os << "x,p\n";
    for (std::size_t i = 0; i < r.distribution.size(); ++i) {
      os << r.offset + static_cast<Site>(i) << ',' << format12(r.distribution[i])
         << '\n';
    }
    return kExitOk;
  }
  Json j = header(c);
  j["steps"] = c.steps;
  j["norm"] = round12(r.norm);
  j["mean_position"] = round12(r.mean_position);
  j["second_moment"] = round12(r.second_moment);
  j["offset"] = r.offset;
  j["distribution"] = rounded(r.distribution);
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_velocity_hist(const RunConfig& c, const std::string& fmt,
                      std::ostream& os) {
  validate_walk(c);
  if (c.steps < 1) throw ValidationError("velocity-hist needs --steps >= 1");
  if (c.bins < 1) throw ValidationError("--bins must be >= 1");
  const CoinField f = field(c);
  const WalkState init = parse_initial(c.initial);
  const VelocityHistogram h = velocity_histogram(f, init, c.steps, c.bins);
  if (fmt == "csv") {
    os << "bin_center,mass\n";
    for (std::size_t i = 0; i < h.mass.size(); ++i) {
      os << format12(h.bin_centers[i]) << ',' << format12(h.mass[i]) << '\n';
    }
    return kExitOk;
  }
  Json j = header(c);
  j["steps"] = c.steps;
  j["bin_centers"] = rounded(h.bin_centers);
  j["mass"] = rounded(h.mass);
  j["max_support_speed"] = round12(h.max_support_speed);
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_eigs(const RunConfig& c, std::ostream& os) {
  if (c.sites > kMaxSites) {
    throw ValidationError("--sites must be <= " + std::to_string(kMaxSites));
  }
  if (c.bins < 16) throw ValidationError("--bins must be >= 16 for eigs");
  if (!(c.gap_margin > 0.0) || !(c.loc_frac > 0.0 && c.loc_frac <= 1.0)) {
    throw ValidationError("eigs needs gap_margin > 0 and loc_frac in (0, 1]");
  }
  const CoinField f = field(c);
  const CoinParams left = parametrize(f.left());
  const CoinParams right = parametrize(f.right());
  const RingOperator ring = build_ring(f, c.sites);
  std::vector<EigReport> reports = eig(ring);
  const SpectralArcs ess = essential_spectrum(left, right);
  const ThresholdSet tau = thresholds(left, right);
  const ClassificationSummary sum =
      classify(reports, ess, tau, c.gap_margin, c.loc_frac);
  const CoverageReport cov = spectral_histogram(reports, ess, c.bins);

  Json eigs = Json::array();
  for (const EigReport& r : reports) {
    eigs.push_back(
        {{"phase", round12(r.phase)},
         {"residual", round12(r.residual)},
         {"ipr", round12(r.ipr)},
         {"com", round12(r.com)},
         {"width99", r.width99},
         {"class", r.classification ? to_string(*r.classification) : "none"},
         {"nearest_threshold_dist", round12(r.nearest_threshold_dist)}});
  }
  Json gap_states = Json::array();
  for (const GapState& g : sum.gap_states) {
    gap_states.push_back({{"phase", round12(g.phase)},
                          {"gap", g.gap_index},
                          {"interface", g.interface},
                          {"com", round12(g.com)},
                          {"width99", g.width99},
                          {"ipr", round12(g.ipr)}});
  }
  Json summary = Json::object();
  summary["inside_fraction"] = round12(cov.inside_fraction);
  summary["outside_count"] = cov.outside_count;
  summary["arc_coverage"] = round12(cov.arc_coverage);
  summary["bulk"] = sum.bulk;
  summary["gap_localized"] = sum.gap_localized;
  summary["threshold_adjacent"] = sum.threshold_adjacent;
  summary["defect_states"] = sum.defect_states;
  summary["seam_states"] = sum.seam_states;
  summary["gap_states"] = gap_states;
  summary["thresholds"] = thresholds_json(tau);
  summary["arcs"] = arcs_json(ess);

  Json j = header(c);
  j["sites"] = c.sites;
  j["eigs"] = eigs;
  j["summary"] = summary;
  os << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_check_commutators(const RunConfig& c, const std::string& fmt,
                          std::ostream& os, std::ostream& err) {
  CoinParams storage;
  const CoinParams& p = single_coin(c, storage);
  validate_grid(c.grid);
  if (c.grid > 1024) throw ValidationError("--grid must be <= 1024");
  const IdentityResiduals r = check_identities(p, c.grid);
  const std::vector<std::pair<const char*, double>> rows = {
      {"r_XV_H", r.r_XV_H},           {"r_XU_UV", r.r_XU_UV},
      {"r_A_V2", r.r_A_V2},           {"r_commute_UV", r.r_commute_UV},
      {"r_commute_UH", r.r_commute_UH}, {"r_norm_u", r.r_norm_u}};
  const bool pass = r.max() <= c.tolerance;
  if (fmt == "json") {
    Json j = header(c);
    j["grid"] = c.grid;
    Json res = Json::object();
    for (const auto& [name, v] : rows) res[name] = round12(v);
    j["residuals"] = res;
    j["max"] = round12(r.max());
    j["tolerance"] = round12(c.tolerance);
    j["pass"] = pass;
    os << j.dump(2) << '\n';
  } else {
    for (const auto& [name, v] : rows) os << name << ' ' << format12(v) << '\n';
  }
  if (!pass) {
    err << "commutator residual " << format12(r.max()) << " exceeds "
        << format12(c.tolerance) << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

Json short_range_json(const ShortRangeReport& r, const TailBound& t) {
  return {{"pass", r.pass},
          {"kappa", round12(t.kappa)},
          {"eps", round12(t.eps)},
          {"worst_ratio", round12(r.worst_ratio)},
          {"worst_site", r.worst_site},
          {"checked", r.checked}};
}

Json params_json(const CoinParams& p) {
  return {{"a", round12(p.a)},
          {"b", round12(p.b)},
          {"alpha", round12(p.alpha)},
          {"beta", round12(p.beta)},
          {"delta", round12(p.delta)}};
}

int cmd_verify_coin(const RunConfig& c, std::ostream& os, std::ostream& err) {
  if (!c.coin) throw ValidationError("verify-coin needs --coin");
  if (c.range < 1) throw ValidationError("--range must be >= 1");
  const CoinField f = build_field(*c.coin);
  for (Site x = -c.range; x <= c.range; ++x) f.at(x);  // unitarity per site
  const ShortRangeReport l = verify_short_range(
      f, -c.range, -1, f.left_tail().kappa, f.left_tail().eps);
  const ShortRangeReport r = verify_short_range(
      f, 1, c.range, f.right_tail().kappa, f.right_tail().eps);
  Json j = header(c);
  j["family"] = f.family();
  j["left"] = params_json(parametrize(f.left()));
  j["right"] = params_json(parametrize(f.right()));
  j["short_range"] = {{"left", short_range_json(l, f.left_tail())},
                      {"right", short_range_json(r, f.right_tail())}};
  j["pass"] = l.pass && r.pass;
  os << j.dump(2) << '\n';
  if (!(l.pass && r.pass)) {
    const ShortRangeReport& bad = l.pass ? r : l;
    err << "coin field is not short-range: ||C(x) - C_tail|| exceeds "
           "kappa |x|^(-1-eps) by a factor "
        << format12(bad.worst_ratio) << " at x = " << bad.worst_site << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int dispatch(const RunConfig& c, std::ostream& os, std::ostream& err) {
  const std::string fmt = resolved_format(c);
  const std::string& s = c.subcommand;
  if (s == "arcs") return cmd_arcs(c, os);
  if (s == "thresholds") return cmd_thresholds(c, os);
  if (s == "mourre") return cmd_mourre(c, os);
  if (s == "dispersion") return cmd_dispersion(c, fmt, os);
  if (s == "evolve") return cmd_evolve(c, fmt, os);
  if (s == "velocity-hist") return cmd_velocity_hist(c, fmt, os);
  if (s == "eigs") return cmd_eigs(c, os);
  if (s == "check-commutators") return cmd_check_commutators(c, fmt, os, err);
  if (s == "verify-coin") return cmd_verify_coin(c, os, err);
  throw ValidationError("unknown subcommand \"" + s + "\"");
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ValidationError("empty complex number");
  if (s.back() != 'i') return {parse_real(s, "complex number"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split before the last sign that is not an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
        body[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  const std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
  const std::string im = cut == std::string::npos ? body : body.substr(cut);
  double imag = 0.0;
  if (im.empty() || im == "+") {
    imag = 1.0;
  } else if (im == "-") {
    imag = -1.0;
  } else {
    imag = parse_real(im, "complex number " + text);
  }
  return {re.empty() ? 0.0 : parse_real(re, "complex number " + text), imag};
}

WalkState parse_initial(const std::string& text) {
  const auto colon = text.find(':');
  const auto comma = text.find(',', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || comma == std::string::npos) {
    throw ValidationError("--initial must look like \"x:c0,c1\", got \"" +
                          text + "\"");
  }
  const std::string xs = trim(text.substr(0, colon));
  char* end = nullptr;
  const long long x = std::strtoll(xs.c_str(), &end, 10);
  if (xs.empty() || *end != '\0') {
    throw ValidationError("--initial: site \"" + xs + "\" is not an integer");
  }
  Spinor s(parse_complex(text.substr(colon + 1, comma - colon - 1)),
           parse_complex(text.substr(comma + 1)));
  const double n = s.norm();
  if (!(n > 0.0)) throw ValidationError("--initial spinor must be nonzero");
  return WalkState::delta(static_cast<Site>(x), s / n);
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) return dispatch(c, out, err);
  // Render fully before touching the file so failures leave no partial output.
  std::ostringstream buf;
  const int code = dispatch(c, buf, err);
  std::ofstream file(c.out);
  if (!file) throw ValidationError("cannot write " + c.out);
  file << buf.str();
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spectral analysis of one-dimensional quantum walks U = SC.",
               "qwalk"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  bool degrees = false;
  bool print_config = false;
  std::string config_path;
  app.add_flag("--degrees", degrees,
               "Read every angle argument (and coin config angles) in degrees");
  app.add_flag("--print-config", print_config,
               "Print the resolved run config as JSON and exit");
  app.add_option("--config", config_path,
                 "Run a saved config (as printed by --print-config)")
      ->check(CLI::ExistingFile);

  std::string coin_path;
  std::string coin_params;
  std::string theta;
  RunConfig c;
  bool json_flag = false;

  const auto add_coin = [&](CLI::App* sub, bool params_only) {
    sub->add_option("--coin-params", coin_params,
                    "Constant coin as \"a,alpha,beta,delta\"");
    if (!params_only) {
      sub->add_option("--coin", coin_path, "Coin-field JSON config")
          ->check(CLI::ExistingFile);
    }
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--json", json_flag, "Shorthand for --format json");
  };
  const auto add_walk = [&](CLI::App* sub) {
    sub->add_option("--steps", c.steps, "Number of steps t");
    sub->add_option("--initial", c.initial,
                    "Initial state \"x:c0,c1\", normalized (e.g. 0:1,i)");
  };

  auto* s_arcs = app.add_subcommand("arcs", "Spectral arcs of a coin or field");
  add_coin(s_arcs, false);
  add_output(s_arcs);
  auto* s_thr = app.add_subcommand("thresholds", "Thresholds of a field");
  add_coin(s_thr, false);
  add_output(s_thr);
  auto* s_mourre = app.add_subcommand("mourre", "Mourre function at an angle");
  add_coin(s_mourre, false);
  add_output(s_mourre);
  s_mourre->add_option("--theta", theta, "Spectral angle")->required();
  auto* s_disp = app.add_subcommand("dispersion", "Symbol eigenvalues and "
                                                  "velocities over k");
  add_coin(s_disp, true);
  add_output(s_disp);
  s_disp->add_option("--samples", c.samples, "Number of k samples");
  auto* s_evolve = app.add_subcommand("evolve", "Evolve a delta state");
  add_coin(s_evolve, false);
  add_output(s_evolve);
  add_walk(s_evolve);
  auto* s_vh = app.add_subcommand("velocity-hist",
                                  "Histogram of x / t after t steps");
  add_coin(s_vh, false);
  add_output(s_vh);
  add_walk(s_vh);
  s_vh->add_option("--bins", c.bins, "Number of bins on [-1, 1]");
  auto* s_eigs = app.add_subcommand("eigs", "Eigen-analysis of a ring "
                                            "truncation");
  add_coin(s_eigs, false);
  add_output(s_eigs);
  s_eigs->add_option("--sites", c.sites, "Ring size N");
  s_eigs->add_option("--bins", c.bins, "Histogram bins");
  s_eigs->add_option("--gap-margin", c.gap_margin,
                     "Minimum threshold distance for gap states");
  s_eigs->add_option("--loc-frac", c.loc_frac,
                     "Maximum width99 as a fraction of N");
  auto* s_comm = app.add_subcommand("check-commutators",
                                    "Commutator identity residuals on a "
                                    "k-grid");
  add_coin(s_comm, true);
  add_output(s_comm);
  s_comm->add_option("--grid", c.grid, "Grid size K");
  s_comm->add_option("--tol", c.tolerance, "Residual bound");
  auto* s_verify = app.add_subcommand("verify-coin",
                                      "Check unitarity and short-range tails");
  add_coin(s_verify, false);
  add_output(s_verify);
  s_verify->add_option("--range", c.range, "Check sites in [-range, range]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const double scale = degrees ? kPi / 180.0 : 1.0;
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw ValidationError("--config cannot be combined with a subcommand");
      }
      std::ifstream in(config_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config " + config_path +
                              " is not valid JSON: " + e.what());
      }
      c = run_config_from_json(j);
    } else {
      if (app.get_subcommands().empty()) {
        err << app.help();
        return kExitValidation;
      }
      c.subcommand = app.get_subcommands().front()->get_name();
      if (json_flag) c.format = "json";
      if (!coin_path.empty()) c.coin = load_coin_spec(coin_path, scale);
      if (!coin_params.empty()) {
        c.coin_params = parse_coin_params(coin_params, scale);
      }
      if (c.coin && c.coin_params) {
        throw ValidationError("give either --coin or --coin-params, not both");
      }
      if (!theta.empty()) c.theta = parse_real(theta, "--theta") * scale;
    }
    if (print_config) {
      out << to_json(c).dump(2) << '\n';
      return kExitOk;
    }
    return execute(c, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace qwalk::cli
