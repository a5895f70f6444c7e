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


#ifndef CRMSHADOW_EXPERIMENTS_RESULTS_HPP
#define CRMSHADOW_EXPERIMENTS_RESULTS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace crmshadow::experiments {

inline constexpr int kCsvSchemaVersion = 1;

/// One output row: grid coordinates, the variances behind the sample cost,
/// and diagnostics. Missing values are written as empty fields.
struct ResultRow {
  std::string figure;
  std::string family;
  std::optional<double> k;
  std::optional<double> theta;
  std::optional<double> h;
  std::optional<double> weight;
  std::string noise;
  int draw = 0;
  std::optional<double> eps_target;
  std::optional<double> reuse;
  std::string ensemble;
  std::string mode;
  std::optional<double> eps;
  int n = 0;
  std::optional<double> n_u;
  std::optional<double> v;
  std::optional<double> v_star_rho;
  std::optional<double> v_star_delta;
  std::optional<double> v_r;
  std::string method;
  std::optional<double> m2;
  std::optional<double> delta_norm2_sq;
  std::optional<double> delta_norm1;
  /// ||Xi_{Delta,O}||_2^2 / d.
  std::optional<double> cross_char_norm2_sq;
  std::optional<double> wall_time_s;
};

const std::vector<std::string> &csv_columns();
void write_csv_header(std::ostream &out);
void write_csv_row(std::ostream &out, const ResultRow &row);
/// Parses a file written by write_csv_header / write_csv_row.
std::vector<ResultRow> read_csv(const std::string &path);

/// JSON provenance record written next to the CSV.
void write_sidecar(const std::string &path, const std::string &resolved_spec_yaml,
                   const std::string &figure, std::uint64_t seed, const std::string &preset,
                   std::size_t rows, int threads);

}  // namespace crmshadow::experiments

#endif
