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


#ifndef CRMSHADOW_EXPERIMENTS_CONFIG_HPP
#define CRMSHADOW_EXPERIMENTS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crmshadow/estimators.hpp"
#include "crmshadow/variance.hpp"

namespace crmshadow::experiments {

/// One problem found while reading a config; line and column are 1-based,
/// 0 when unknown.
struct ConfigIssue {
  int line = 0;
  int column = 0;
  std::string message;
  std::string str() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue> &issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// A named list of values swept in the experiment grid.
struct Axis {
  std::string name;
  std::vector<double> values;
};

/// Noise applied to the target state. `strength` is the fixed parameter
/// (p, beta or theta) when present; otherwise the model is calibrated from
/// the eps axis, or drawn at random when `random_strength` is set.
struct NoiseSpec {
  std::string model;
  std::optional<double> strength;
  bool random_strength = false;
  std::string pauli;

  /// True when the model needs a target infidelity from the eps axis.
  bool needs_eps() const;
  /// True when rows differ between draws.
  bool is_stochastic() const;
  std::string label() const;
};

/// Circuit reuse: a fixed count, ceil(c / eps^2), ceil(d / eps^2) or infinity.
struct ReusePolicy {
  enum class Kind : std::uint8_t { Fixed, ScaledByEps, DimByEps, Infinite };
  Kind kind = Kind::Fixed;
  double value = 1.0;

  static ReusePolicy parse(const std::string &text);
  double evaluate(int n, double eps) const;
  std::string str() const;
};

enum class ClosedFormPolicy : std::uint8_t { Prefer, Auto, Never };

enum class ExperimentKind : std::uint8_t { SampleCost, Scatter };

struct ExperimentSpec {
  std::string figure;
  std::string description;
  ExperimentKind kind = ExperimentKind::SampleCost;
  std::uint64_t seed = 0;
  std::string family;
  /// State parameters in sweep order; always contains "n".
  std::vector<Axis> state_axes;
  std::vector<NoiseSpec> noises;
  std::vector<double> eps;
  /// "fidelity" or "z_prefix".
  std::string observable = "fidelity";
  std::vector<double> weights;
  int draws = 50;
  std::vector<ReusePolicy> reuse;
  std::vector<Ensemble> ensembles;
  std::vector<EstimatorMode> modes;
  double r = 0.25;
  double delta = 0.01;
  std::optional<double> eps_abs;
  ClosedFormPolicy closed_form = ClosedFormPolicy::Auto;
  double pair_budget = 1e8;
  std::string output;
  std::int64_t mc_circuits = 10000;
  std::string preset;
};

/// Reads, applies the preset and validates. Throws ConfigError listing every
/// problem found.
ExperimentSpec load_config(const std::string &path, const std::string &preset = "");
ExperimentSpec parse_config(const std::string &text, const std::string &preset = "");
/// Issues without throwing; empty when the config is valid.
std::vector<ConfigIssue> validate_config(const std::string &path, const std::string &preset = "");

/// Canonical YAML of a resolved spec.
std::string dump_spec(const ExperimentSpec &spec);

/// Figure ids with their config file, read from a manifest.
struct ManifestEntry {
  std::string figure;
  std::string config;
  std::string description;
};
std::vector<ManifestEntry> load_manifest(const std::string &path);

std::string to_string(ClosedFormPolicy p);

}  // namespace crmshadow::experiments

#endif
