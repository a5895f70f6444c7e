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


#ifndef CRMSHADOW_EXPERIMENTS_RUNNER_HPP
#define CRMSHADOW_EXPERIMENTS_RUNNER_HPP

#include <functional>
#include <vector>

#include "crmshadow/experiments/config.hpp"
#include "crmshadow/experiments/results.hpp"

namespace crmshadow::experiments {

struct RunOptions {
  int threads = 1;
  /// Records wall time per row; off by default so output is reproducible.
  bool timing = false;
  /// Receives rows in grid order as soon as every earlier row is complete.
  std::function<void(const ResultRow &)> sink;
};

/// Runs every grid point, noise draw, ensemble, reuse policy and mode.
/// Output is identical for any thread count.
std::vector<ResultRow> run_experiment(const ExperimentSpec &spec, const RunOptions &options = {});

/// Monte-Carlo comparison of the empirical per-circuit estimator variance
/// with the analytic V_R.
struct McCheck {
  ResultRow row;
  double empirical = 0.0;
  double analytic = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  double mean = 0.0;
  double target = 0.0;
};

/// Requires n <= 3 and finite reuse; throws BudgetError otherwise.
std::vector<McCheck> mc_validate(const ExperimentSpec &spec, const RunOptions &options = {});

}  // namespace crmshadow::experiments

#endif
