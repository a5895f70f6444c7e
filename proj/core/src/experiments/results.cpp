// Copyright 2026 The crmshadow Authors
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


#include "crmshadow/experiments/results.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace crmshadow::experiments {

namespace {

std::string fmt(const std::optional<double> &v) {
  if (!v || std::isnan(*v)) {
    return "";
  }
  if (std::isinf(*v)) {
    return *v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), *v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_opt(const std::string &s) {
  if (s.empty()) {
    return std::nullopt;
  }
  if (s == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (s == "-inf") {
    return -std::numeric_limits<double>::infinity();
  }
  return std::stod(s);
}

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

const std::vector<std::string> &csv_columns() {
  static const std::vector<std::string> kColumns = {
      "figure",       "family",         "k",
      "theta",        "h",              "weight",
      "noise",        "draw",           "eps_target",
      "R",            "ensemble",       "mode",
      "eps",          "n",              "N_U",
      "V",            "V_star_rho",     "V_star_delta",
      "V_R",          "method",         "M2",
      "delta_norm2_sq", "delta_norm1",  "cross_char_norm2_sq",
      "wall_time_s"};
  return kColumns;
}

void write_csv_header(std::ostream &out) {
  out << "#schema_version=" << kCsvSchemaVersion << '\n';
  const auto &cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
}

void write_csv_row(std::ostream &out, const ResultRow &r) {
  out << r.figure << ',' << r.family << ',' << fmt(r.k) << ',' << fmt(r.theta) << ','
      << fmt(r.h) << ',' << fmt(r.weight) << ',' << r.noise << ',' << r.draw << ','
      << fmt(r.eps_target) << ',' << fmt(r.reuse) << ',' << r.ensemble << ',' << r.mode << ','
      << fmt(r.eps) << ',' << r.n << ',' << fmt(r.n_u) << ',' << fmt(r.v) << ','
      << fmt(r.v_star_rho) << ',' << fmt(r.v_star_delta) << ',' << fmt(r.v_r) << ','
      << r.method << ',' << fmt(r.m2) << ',' << fmt(r.delta_norm2_sq) << ','
      << fmt(r.delta_norm1) << ',' << fmt(r.cross_char_norm2_sq) << ','
      << fmt(r.wall_time_s) << '\n';
}

std::vector<ResultRow> read_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::string line;
  std::getline(in, line);
  if (line != "#schema_version=" + std::to_string(kCsvSchemaVersion)) {
    throw std::runtime_error(path + ": unsupported schema line '" + line + "'");
  }
  std::getline(in, line);
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    auto f = split(line);
    if (f.size() != csv_columns().size()) {
      throw std::runtime_error(path + ": wrong field count");
    }
    ResultRow r;
    r.figure = f[0];
    r.family = f[1];
    r.k = parse_opt(f[2]);
    r.theta = parse_opt(f[3]);
    r.h = parse_opt(f[4]);
    r.weight = parse_opt(f[5]);
    r.noise = f[6];
    r.draw = std::stoi(f[7]);
    r.eps_target = parse_opt(f[8]);
    r.reuse = parse_opt(f[9]);
    r.ensemble = f[10];
    r.mode = f[11];
    r.eps = parse_opt(f[12]);
    r.n = std::stoi(f[13]);
    r.n_u = parse_opt(f[14]);
    r.v = parse_opt(f[15]);
    r.v_star_rho = parse_opt(f[16]);
    r.v_star_delta = parse_opt(f[17]);
    r.v_r = parse_opt(f[18]);
    r.method = f[19];
    r.m2 = parse_opt(f[20]);
    r.delta_norm2_sq = parse_opt(f[21]);
    r.delta_norm1 = parse_opt(f[22]);
    r.cross_char_norm2_sq = parse_opt(f[23]);
    r.wall_time_s = parse_opt(f[24]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_sidecar(const std::string &path, const std::string &resolved_spec_yaml,
                   const std::string &figure, std::uint64_t seed, const std::string &preset,
                   std::size_t rows, int threads) {
  nlohmann::json j;
  j["schema_version"] = kCsvSchemaVersion;
  j["figure"] = figure;
  j["seed"] = seed;
  j["preset"] = preset;
  j["rows"] = rows;
  j["threads"] = threads;
  j["columns"] = csv_columns();
  j["resolved_spec"] = resolved_spec_yaml;
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << j.dump(2) << '\n';
}

}  // namespace crmshadow::experiments
