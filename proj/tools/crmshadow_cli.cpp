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


#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "crmshadow/experiments/config.hpp"
#include "crmshadow/experiments/runner.hpp"
#include "crmshadow/types.hpp"

namespace fs = std::filesystem;
using namespace crmshadow;
using namespace crmshadow::experiments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

int report_config_error(const ConfigError &e) {
  for (const ConfigIssue &issue : e.issues()) {
    std::cerr << "config error: " << issue.str() << "\n";
  }
  return kExitConfig;
}

int cmd_run(const std::string &config, const std::string &out_dir, const std::string &preset,
            int threads, bool timing) {
  ExperimentSpec spec = load_config(config, preset);
  fs::path dir(out_dir);
  fs::create_directories(dir);
  fs::path csv_path = dir / spec.output;
  std::ofstream csv(csv_path);
  if (!csv) {
    std::cerr << "cannot open " << csv_path << " for writing\n";
    return kExitFailure;
  }
  write_csv_header(csv);
  RunOptions options;
  options.threads = threads;
  options.timing = timing;
  std::size_t count = 0;
  options.sink = [&](const ResultRow &row) {
    write_csv_row(csv, row);
    ++count;
    if (count % 256 == 0) {
      csv.flush();
    }
  };
  run_experiment(spec, options);
  csv.close();
  fs::path sidecar = csv_path;
  sidecar.replace_extension(".json");
  write_sidecar(sidecar.string(), dump_spec(spec), spec.figure, spec.seed, spec.preset, count,
                threads);
  std::cout << spec.figure << ": " << count << " rows -> " << csv_path.string() << "\n";
  return kExitOk;
}

int cmd_validate(const std::string &config, const std::string &preset) {
  std::vector<ConfigIssue> issues = validate_config(config, preset);
  if (!issues.empty()) {
    return report_config_error(ConfigError(issues));
  }
  ExperimentSpec spec = load_config(config, preset);
  std::cout << dump_spec(spec);
  return kExitOk;
}

int cmd_mc_validate(const std::string &config, const std::string &preset, int threads) {
  ExperimentSpec spec = load_config(config, preset);
  RunOptions options;
  options.threads = threads;
  std::vector<McCheck> checks = mc_validate(spec, options);
  int failures = 0;
  std::printf("%-5s %-8s %-9s %-9s %4s %10s %14s %14s %12s %8s\n", "n", "noise", "ensemble",
              "mode", "draw", "R", "empirical", "analytic", "stderr", "z");
  for (const McCheck &c : checks) {
    bool ok = std::abs(c.z) <= 4.0;
    failures += ok ? 0 : 1;
    std::printf("%-5d %-8s %-9s %-9s %4d %10.0f %14.6e %14.6e %12.4e %8.3f%s\n", c.row.n,
                c.row.noise.substr(0, 8).c_str(), c.row.ensemble.c_str(), c.row.mode.c_str(),
                c.row.draw, c.row.reuse.value_or(1.0), c.empirical, c.analytic,
                c.standard_error, c.z, ok ? "" : "  FAIL");
  }
  std::printf("%zu checks, %d with |z| > 4\n", checks.size(), failures);
  return failures == 0 ? kExitOk : kExitFailure;
}

int cmd_list_figures(const std::string &manifest) {
  for (const ManifestEntry &e : load_manifest(manifest)) {
    std::printf("%-22s %-36s %s\n", e.figure.c_str(), e.config.c_str(), e.description.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Classical-shadow fidelity estimation: variances, sample costs and experiments"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = "results";
  std::string preset;
  int threads = 1;
  bool timing = false;
  std::string manifest = "configs/manifest.yaml";

  CLI::App *run = app.add_subcommand("run", "Run an experiment and write CSV + JSON sidecar");
  run->add_option("config", config, "Experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--preset", preset, "Preset overriding the base config")
      ->check(CLI::IsMember({"desk", "paper"}));
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--timing", timing, "Record per-row wall time");

  CLI::App *validate = app.add_subcommand("validate", "Check a config and print it resolved");
  validate->add_option("config", config, "Experiment config")->required()->check(CLI::ExistingFile);
  validate->add_option("--preset", preset, "Preset overriding the base config")
      ->check(CLI::IsMember({"desk", "paper"}));

  CLI::App *mc = app.add_subcommand("mc-validate", "Compare simulated and analytic V_R");
  mc->add_option("config", config, "Experiment config")->required()->check(CLI::ExistingFile);
  mc->add_option("--preset", preset, "Preset overriding the base config")
      ->check(CLI::IsMember({"desk", "paper"}));
  mc->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App *list = app.add_subcommand("list-figures", "List figure ids in the manifest");
  list->add_option("--manifest", manifest, "Manifest file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config, out_dir, preset, threads, timing);
    }
    if (validate->parsed()) {
      return cmd_validate(config, preset);
    }
    if (mc->parsed()) {
      return cmd_mc_validate(config, preset, threads);
    }
    return cmd_list_figures(manifest);
  } catch (const ConfigError &e) {
    return report_config_error(e);
  } catch (const BudgetError &e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
