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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "crmshadow/experiments/config.hpp"

namespace crmshadow::experiments {
namespace {

const char *kBase = R"(figure: unit
seed: 7
state:
  family: s_nk
  n: 3
  k: [0, 2]
noise: depolarizing
eps: [0.01, 0.1]
reuse: ceil(10/eps^2)
ensembles: [clifford, 4design]
modes: [thr, crm]
precision: {r: 0.25, delta: 0.01}
)";

std::vector<std::string> messages(const std::string &text) {
  std::vector<std::string> out;
  try {
    parse_config(text);
  } catch (const ConfigError &e) {
    for (const auto &issue : e.issues()) {
      out.push_back(issue.message);
    }
  }
  return out;
}

bool mentions(const std::vector<std::string> &msgs, const std::string &needle) {
  for (const auto &m : msgs) {
    if (m.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

TEST(Config, ParsesBaseSpec) {
  ExperimentSpec s = parse_config(kBase);
  EXPECT_EQ(s.figure, "unit");
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.family, "s_nk");
  ASSERT_EQ(s.state_axes.size(), 2u);
  EXPECT_EQ(s.state_axes[0].name, "n");
  EXPECT_EQ(s.state_axes[1].values, (std::vector<double>{0, 2}));
  EXPECT_EQ(s.eps, (std::vector<double>{0.01, 0.1}));
  ASSERT_EQ(s.reuse.size(), 1u);
  EXPECT_EQ(s.reuse[0].kind, ReusePolicy::Kind::ScaledByEps);
  EXPECT_EQ(s.ensembles.size(), 2u);
  EXPECT_EQ(s.modes.size(), 2u);
  EXPECT_DOUBLE_EQ(s.r, 0.25);
}

TEST(Config, SeedRequired) {
  std::string text = kBase;
  text.erase(text.find("seed: 7\n"), 8);
  EXPECT_TRUE(mentions(messages(text), "seed required"));
}

TEST(Config, ZeroInEpsGridRejected) {
  std::string text = kBase;
  text.replace(text.find("[0.01, 0.1]"), 11, "[0, 0.1]");
  EXPECT_FALSE(messages(text).empty());
}

TEST(Config, ReportsAllIssuesWithLocations) {
  std::string text = kBase;
  text += "bogus: 1\n";
  text.erase(text.find("seed: 7\n"), 8);
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError &e) {
    EXPECT_GE(e.issues().size(), 2u);
    for (const auto &issue : e.issues()) {
      EXPECT_GT(issue.line, 0) << issue.message;
    }
  }
  EXPECT_TRUE(mentions(messages(text), "unknown key 'bogus'"));
}

TEST(Config, ReusePolicies) {
  ReusePolicy scaled = ReusePolicy::parse("ceil(10/eps^2)");
  EXPECT_EQ(scaled.kind, ReusePolicy::Kind::ScaledByEps);
  EXPECT_DOUBLE_EQ(scaled.evaluate(7, 0.01), 100000.0);
  EXPECT_DOUBLE_EQ(scaled.evaluate(7, 0.003), std::ceil(10.0 / (0.003 * 0.003)));
  ReusePolicy dim = ReusePolicy::parse("ceil(d/eps^2)");
  EXPECT_DOUBLE_EQ(dim.evaluate(3, 0.1), 800.0);
  EXPECT_TRUE(std::isinf(ReusePolicy::parse("inf").evaluate(2, 0.1)));
  EXPECT_DOUBLE_EQ(ReusePolicy::parse("2e10").evaluate(2, 0.1), 2e10);
  EXPECT_THROW(ReusePolicy::parse("ceil(x)"), std::invalid_argument);
  EXPECT_THROW(ReusePolicy::parse("0.5"), std::invalid_argument);
  EXPECT_EQ(ReusePolicy::parse(scaled.str()).kind, scaled.kind);
}

TEST(Config, GridHelpers) {
  std::string text = kBase;
  text.replace(text.find("[0.01, 0.1]"), 11, "{logspace: [0.001, 0.1, 5]}");
  text.replace(text.find("n: 3"), 4, "n: {range: [2, 6, 2]}");
  ExperimentSpec s = parse_config(text);
  ASSERT_EQ(s.eps.size(), 5u);
  EXPECT_EQ(s.eps.front(), 0.001);
  EXPECT_EQ(s.eps.back(), 0.1);
  EXPECT_NEAR(s.eps[2], 0.01, 1e-15);
  EXPECT_EQ(s.state_axes[0].values, (std::vector<double>{2, 4, 6}));
}

TEST(Config, NoiseSpecs) {
  std::string text = kBase;
  text.replace(text.find("noise: depolarizing"), 19,
               "noise: [depolarizing, {model: single_error, pauli: Z, p: 0.5}, "
               "{model: random_pauli, random: true}]");
  ExperimentSpec s = parse_config(text);
  ASSERT_EQ(s.noises.size(), 3u);
  EXPECT_TRUE(s.noises[0].needs_eps());
  EXPECT_FALSE(s.noises[1].needs_eps());
  EXPECT_EQ(s.noises[1].pauli, "Z");
  EXPECT_DOUBLE_EQ(*s.noises[1].strength, 0.5);
  EXPECT_TRUE(s.noises[2].random_strength);
  EXPECT_TRUE(s.noises[2].is_stochastic());
  EXPECT_NE(s.noises[2].label(), s.noises[0].label());
}

TEST(Config, PresetsOverrideKeys) {
  std::string text = kBase;
  text += "draws: 50\npresets:\n  desk: {draws: 5}\n  paper: {}\n";
  EXPECT_EQ(parse_config(text, "desk").draws, 5);
  EXPECT_EQ(parse_config(text, "paper").draws, 50);
  EXPECT_THROW(parse_config(text, "nonexistent"), ConfigError);
}

TEST(Config, DumpRoundTrips) {
  ExperimentSpec s = parse_config(kBase);
  std::string once = dump_spec(s);
  std::string twice = dump_spec(parse_config(once));
  EXPECT_EQ(once, twice);
}

TEST(Config, ShippedConfigsValidate) {
  std::string root = CRMSHADOW_SOURCE_DIR;
  auto manifest = load_manifest(root + "/configs/manifest.yaml");
  EXPECT_GE(manifest.size(), 10u);
  for (const auto &entry : manifest) {
    for (const char *preset : {"desk", "paper"}) {
      std::string path = root + "/" + entry.config;
      auto issues = validate_config(path, preset);
      EXPECT_TRUE(issues.empty()) << path << ": " << (issues.empty() ? "" : issues[0].str());
      ExperimentSpec s = load_config(path, preset);
      EXPECT_EQ(s.figure, entry.figure);
      EXPECT_EQ(dump_spec(parse_config(dump_spec(s))), dump_spec(s)) << path;
    }
  }
}

}  // namespace
}  // namespace crmshadow::experiments
