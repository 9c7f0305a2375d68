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

#include "qwalk/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk {
namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw ValidationError(where + ": unknown field \"" + item.key() + "\"");
    }
  }
}

const Json& require(const Json& j, const std::string& key,
                    const std::string& where) {
  if (!j.contains(key)) {
    throw ValidationError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(what + " must be finite");
  return v;
}

double number_field(const Json& j, const std::string& key,
                    const std::string& where) {
  return number(require(j, key, where), where + "." + key);
}

double number_or(const Json& j, const std::string& key, double fallback,
                 const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

std::array<double, 4> array4(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) {
    throw ValidationError(what + " must be [a, alpha, beta, delta]");
  }
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) v[i] = number(j[i], what);
  return v;
}

CoinSpec parse_two_phase(const Json& j, double scale) {
  const std::string where = "two_phase coin";
  reject_unknown(j, {"family", "sigma_plus", "sigma_minus", "defect"}, where);
  Json body = Json::object();
  body["family"] = "two_phase";
  body["sigma_plus"] = number_field(j, "sigma_plus", where) * scale;
  body["sigma_minus"] = number_field(j, "sigma_minus", where) * scale;
  bool defect = false;
  if (j.contains("defect")) {
    if (!j.at("defect").is_boolean()) {
      throw ValidationError(where + ".defect must be true or false");
    }
    defect = j.at("defect").get<bool>();
  }
  body["defect"] = defect;
  return {body};
}

CoinSpec parse_split_step(const Json& j, double scale) {
  const std::string where = "split_step coin";
  reject_unknown(j, {"family", "theta_minus", "theta_plus", "scale"}, where);
  Json body = Json::object();
  body["family"] = "split_step";
  body["theta_minus"] = number_field(j, "theta_minus", where) * scale;
  body["theta_plus"] = number_field(j, "theta_plus", where) * scale;
  const double s = number_or(j, "scale", 3.0, where);
  if (!(s > 0.0)) throw ValidationError(where + ".scale must be > 0");
  body["scale"] = s;
  return {body};
}

CoinSpec parse_constant(const Json& j, double scale) {
  const std::string where = "constant coin";
  reject_unknown(j, {"family", "params", "matrix"}, where);
  if (j.contains("params") == j.contains("matrix")) {
    throw ValidationError(where + " needs exactly one of params, matrix");
  }
  Json body = Json::object();
  body["family"] = "constant";
  if (j.contains("params")) {
    std::array<double, 4> v = array4(j.at("params"), where + ".params");
    for (std::size_t i = 1; i < 4; ++i) v[i] *= scale;
    to_params(v);  // validates a
    body["params"] = v;
  } else {
    const Matrix2c m = matrix_from_json(j.at("matrix"));
    CoinMatrix{m};
    body["matrix"] = matrix_to_json(m);
  }
  return {body};
}

CoinSpec parse_table(const Json& j) {
  const std::string where = "table coin";
  reject_unknown(j, {"family", "sites", "left", "right", "kappa", "eps"},
                 where);
  Json body = Json::object();
  body["family"] = "table";
  const Json& sites = require(j, "sites", where);
  if (!sites.is_array()) throw ValidationError(where + ".sites must be an array");
  std::map<Site, Json> seen;
  for (const Json& s : sites) {
    reject_unknown(s, {"x", "matrix"}, where + ".sites[]");
    const Json& x = require(s, "x", where + ".sites[]");
    if (!x.is_number_integer()) {
      throw ValidationError(where + ".sites[].x must be an integer");
    }
    const Site site = x.get<Site>();
    if (seen.contains(site)) {
      throw ValidationError(where + ": site " + std::to_string(site) +
                            " listed twice");
    }
    const Matrix2c m = matrix_from_json(require(s, "matrix", where + ".sites[]"));
    CoinMatrix{m};
    seen[site] = matrix_to_json(m);
  }
  Json listed = Json::array();
  for (const auto& [x, m] : seen) listed.push_back({{"x", x}, {"matrix", m}});
  body["sites"] = listed;
  for (const char* side : {"left", "right"}) {
    const Matrix2c m = matrix_from_json(require(j, side, where));
    CoinMatrix{m};
    body[side] = matrix_to_json(m);
  }
  const double kappa = number_or(j, "kappa", 1.0, where);
  const double eps = number_or(j, "eps", 1.0, where);
  if (!(kappa > 0.0) || !(eps > 0.0)) {
    throw ValidationError(where + " needs kappa > 0 and eps > 0");
  }
  body["kappa"] = kappa;
  body["eps"] = eps;
  return {body};
}

template <typename T>
T get_checked(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("run config field \"" + key + "\" has the wrong type");
  }
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format12(v).c_str(), nullptr);
}

std::string format12(double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json matrix_to_json(const Matrix2c& m) {
  Json rows = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 2; ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

Matrix2c matrix_from_json(const Json& j) {
  const auto bad = [] {
    return ValidationError(
        "coin matrix must be [[c00, c01], [c10, c11]] with entries [re, im]");
  };
  if (!j.is_array() || j.size() != 2) throw bad();
  Matrix2c m;
  for (int r = 0; r < 2; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 2) throw bad();
    for (int c = 0; c < 2; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) throw bad();
      m(r, c) = Complex(number(e[0], "matrix entry"), number(e[1], "matrix entry"));
    }
  }
  return m;
}

CoinSpec parse_coin_spec(const Json& j, double angle_scale) {
  if (!j.is_object()) throw ValidationError("coin config must be a JSON object");
  const Json& family = require(j, "family", "coin config");
  if (!family.is_string()) throw ValidationError("coin family must be a string");
  const std::string name = family.get<std::string>();
  if (name == "two_phase") return parse_two_phase(j, angle_scale);
  if (name == "split_step") return parse_split_step(j, angle_scale);
  if (name == "constant") return parse_constant(j, angle_scale);
  if (name == "table") return parse_table(j);
  throw ValidationError("unknown coin family \"" + name +
                        "\" (expected two_phase, split_step, constant, table)");
}

CoinSpec load_coin_spec(const std::string& path, double angle_scale) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open coin config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("coin config " + path + " is not valid JSON: " +
                          e.what());
  }
  return parse_coin_spec(j, angle_scale);
}

CoinField build_field(const CoinSpec& spec) {
  const Json& b = spec.body;
  const std::string family = b.at("family").get<std::string>();
  if (family == "two_phase") {
    return two_phase(b.at("sigma_plus").get<double>(),
                     b.at("sigma_minus").get<double>(),
                     b.at("defect").get<bool>());
  }
  if (family == "split_step") {
    return split_step_profile(b.at("theta_minus").get<double>(),
                              b.at("theta_plus").get<double>(),
                              b.at("scale").get<double>());
  }
  if (family == "constant") {
    if (b.contains("params")) {
      return constant_field(reconstruct(
          to_params(b.at("params").get<std::array<double, 4>>())));
    }
    return constant_field(CoinMatrix(matrix_from_json(b.at("matrix"))));
  }
  std::map<Site, CoinMatrix> sites;
  for (const Json& s : b.at("sites")) {
    sites.emplace(s.at("x").get<Site>(),
                  CoinMatrix(matrix_from_json(s.at("matrix"))));
  }
  const TailBound tail{b.at("kappa").get<double>(), b.at("eps").get<double>()};
  return table_field(std::move(sites), CoinMatrix(matrix_from_json(b.at("left"))),
                     CoinMatrix(matrix_from_json(b.at("right"))), tail, tail);
}

std::array<double, 4> parse_coin_params(const std::string& text,
                                        double angle_scale) {
  std::vector<double> fields;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    char* end = nullptr;
    const double x = std::strtod(field.c_str(), &end);
    while (*end == ' ') ++end;
    if (end == field.c_str() || *end != '\0' || !std::isfinite(x)) {
      throw ValidationError("--coin-params: \"" + field + "\" is not a number");
    }
    fields.push_back(x);
  }
  if (fields.size() != 4) {
    throw ValidationError(
        "--coin-params must be four numbers \"a,alpha,beta,delta\"");
  }
  std::array<double, 4> v{};
  std::copy(fields.begin(), fields.end(), v.begin());
  for (std::size_t i = 1; i < 4; ++i) v[i] *= angle_scale;
  to_params(v);
  return v;
}

CoinParams to_params(const std::array<double, 4>& v) {
  return make_params(v[0], v[1], v[2], v[3]);
}

Json to_json(const RunConfig& c) {
  Json j = Json::object();
  j["schema"] = 1;
  j["subcommand"] = c.subcommand;
  if (c.coin) j["coin"] = c.coin->body;
  if (c.coin_params) j["coin_params"] = *c.coin_params;
  if (c.theta) j["theta"] = *c.theta;
  j["sites"] = c.sites;
  j["grid"] = c.grid;
  j["steps"] = c.steps;
  j["bins"] = c.bins;
  j["samples"] = c.samples;
  j["range"] = c.range;
  j["initial"] = c.initial;
  j["gap_margin"] = c.gap_margin;
  j["loc_frac"] = c.loc_frac;
  j["tolerance"] = c.tolerance;
  j["out"] = c.out;
  j["format"] = c.format;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  reject_unknown(j,
                 {"schema", "subcommand", "coin", "coin_params", "theta",
                  "sites", "grid", "steps", "bins", "samples", "range",
                  "initial", "gap_margin", "loc_frac", "tolerance", "out",
                  "format"},
                 "run config");
  if (!j.contains("schema") || j.at("schema") != 1) {
    throw ValidationError("run config needs \"schema\": 1");
  }
  RunConfig c;
  require(j, "subcommand", "run config");
  c.subcommand = get_checked<std::string>(j, "subcommand");
  if (j.contains("coin")) c.coin = parse_coin_spec(j.at("coin"));
  if (j.contains("coin_params")) {
    c.coin_params = array4(j.at("coin_params"), "run config coin_params");
    to_params(*c.coin_params);
  }
  if (j.contains("theta")) c.theta = number(j.at("theta"), "run config theta");
  const auto opt = [&j](const char* key, auto& field) {
    using T = std::decay_t<decltype(field)>;
    if (j.contains(key)) field = get_checked<T>(j, key);
  };
  opt("sites", c.sites);
  opt("grid", c.grid);
  opt("steps", c.steps);
  opt("bins", c.bins);
  opt("samples", c.samples);
  opt("range", c.range);
  opt("initial", c.initial);
  opt("gap_margin", c.gap_margin);
  opt("loc_frac", c.loc_frac);
  opt("tolerance", c.tolerance);
  opt("out", c.out);
  opt("format", c.format);
  if (!c.format.empty() && c.format != "json" && c.format != "csv" &&
      c.format != "text") {
    throw ValidationError("run config format must be json, csv or text");
  }
  return c;
}

}  // namespace qwalk
