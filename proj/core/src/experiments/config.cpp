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


#include "crmshadow/experiments/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "crmshadow/states.hpp"

namespace crmshadow::experiments {

namespace {

using Issues = std::vector<ConfigIssue>;

const std::set<std::string> kTopKeys = {
    "figure", "description", "kind",        "seed",        "state",  "noise",
    "eps",    "observable",  "weight",      "draws",       "reuse",  "ensembles",
    "modes",  "precision",   "closed_form", "pair_budget", "output", "mc",
    "presets"};
const std::set<std::string> kStateParams = {"n", "k", "theta", "h", "J"};
const std::set<std::string> kNoiseModels = {
    "none",          "depolarizing",          "random_pauli",   "random_local_rotation",
    "collective_rotation", "single_error",    "random_single_error", "random_coherent"};

void add(Issues &issues, const YAML::Node &node, std::string message) {
  ConfigIssue issue;
  if (node.IsDefined()) {
    YAML::Mark m = node.Mark();
    if (m.line >= 0) {
      issue.line = m.line + 1;
      issue.column = m.column + 1;
    }
  }
  issue.message = std::move(message);
  issues.push_back(std::move(issue));
}

std::optional<double> scalar_double(const YAML::Node &node, const std::string &where,
                                    Issues &issues) {
  if (!node.IsScalar()) {
    add(issues, node, where + ": expected a number");
    return std::nullopt;
  }
  try {
    std::string s = node.Scalar();
    if (s == "inf" || s == "infinity") {
      return std::numeric_limits<double>::infinity();
    }
    return node.as<double>();
  } catch (const YAML::Exception &) {
    add(issues, node, where + ": '" + node.Scalar() + "' is not a number");
    return std::nullopt;
  }
}

std::optional<std::string> scalar_string(const YAML::Node &node, const std::string &where,
                                         Issues &issues) {
  if (!node.IsScalar()) {
    add(issues, node, where + ": expected a string");
    return std::nullopt;
  }
  return node.Scalar();
}

std::vector<double> parse_sweep(const YAML::Node &node, const std::string &where, Issues &issues) {
  std::vector<double> out;
  if (node.IsScalar()) {
    if (auto v = scalar_double(node, where, issues)) {
      out.push_back(*v);
    }
    return out;
  }
  if (node.IsSequence()) {
    for (const auto &item : node) {
      if (auto v = scalar_double(item, where, issues)) {
        out.push_back(*v);
      }
    }
    if (out.empty()) {
      add(issues, node, where + ": empty list");
    }
    return out;
  }
  if (node.IsMap() && node.size() == 1) {
    std::string kind = node.begin()->first.as<std::string>();
    YAML::Node args = node.begin()->second;
    std::vector<double> a;
    if (args.IsSequence() && args.size() == 3) {
      for (const auto &item : args) {
        if (auto v = scalar_double(item, where + "." + kind, issues)) {
          a.push_back(*v);
        }
      }
    }
    if (a.size() != 3) {
      add(issues, node, where + ": " + kind + " takes [start, stop, count-or-step]");
      return out;
    }
    if (kind == "logspace" || kind == "linspace") {
      int count = static_cast<int>(a[2]);
      if (count < 1 || count != a[2]) {
        add(issues, args, where + ": point count must be a positive integer");
        return out;
      }
      if (kind == "logspace" && !(a[0] > 0.0 && a[1] > 0.0)) {
        add(issues, args, where + ": logspace endpoints must be positive");
        return out;
      }
      for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        if (i == 0 || i == count - 1) {
          out.push_back(i == 0 ? a[0] : a[1]);
        } else {
          out.push_back(kind == "logspace" ? a[0] * std::pow(a[1] / a[0], t)
                                           : a[0] + t * (a[1] - a[0]));
        }
      }
      return out;
    }
    if (kind == "range") {
      if (!(a[2] > 0.0)) {
        add(issues, args, where + ": range step must be positive");
        return out;
      }
      for (double v = a[0]; v <= a[1] + 1e-9 * std::abs(a[2]); v += a[2]) {
        out.push_back(v);
      }
      return out;
    }
    add(issues, node, where + ": unknown sweep '" + kind + "' (logspace, linspace, range)");
    return out;
  }
  add(issues, node, where + ": expected a number, a list or a sweep map");
  return out;
}

void check_keys(const YAML::Node &node, const std::set<std::string> &allowed,
                const std::string &where, Issues &issues) {
  for (const auto &kv : node) {
    std::string key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      add(issues, kv.first, "unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

NoiseSpec parse_noise(const YAML::Node &node, Issues &issues) {
  NoiseSpec spec;
  if (node.IsScalar()) {
    spec.model = node.Scalar();
  } else if (node.IsMap()) {
    check_keys(node, {"model", "p", "beta", "theta", "random", "pauli"}, "noise", issues);
    if (!node["model"]) {
      add(issues, node, "noise: model required");
      return spec;
    }
    spec.model = scalar_string(node["model"], "noise.model", issues).value_or("");
    for (const char *key : {"p", "beta", "theta"}) {
      if (node[key]) {
        spec.strength = scalar_double(node[key], std::string("noise.") + key, issues);
      }
    }
    if (node["random"]) {
      try {
        spec.random_strength = node["random"].as<bool>();
      } catch (const YAML::Exception &) {
        add(issues, node["random"], "noise.random: expected true or false");
      }
    }
    if (node["pauli"]) {
      spec.pauli = scalar_string(node["pauli"], "noise.pauli", issues).value_or("");
    }
  } else {
    add(issues, node, "noise: expected a model name or a map");
    return spec;
  }
  if (!kNoiseModels.contains(spec.model)) {
    add(issues, node, "noise: unknown model '" + spec.model + "'");
  }
  if (spec.model == "single_error") {
    if (spec.pauli.empty()) {
      add(issues, node, "noise: single_error needs a pauli string");
    }
    if (!spec.strength) {
      add(issues, node, "noise: single_error needs p");
    }
  }
  if (spec.strength && spec.model != "collective_rotation" &&
      !(*spec.strength >= 0.0 && *spec.strength <= 1.0)) {
    add(issues, node, "noise: strength must lie in [0, 1]");
  }
  return spec;
}

YAML::Node apply_preset(const YAML::Node &root, const std::string &preset, Issues &issues) {
  YAML::Node out = YAML::Clone(root);
  YAML::Node presets = out["presets"];
  if (!preset.empty()) {
    if (!presets || !presets[preset]) {
      add(issues, presets ? presets : root, "unknown preset '" + preset + "'");
    } else {
      for (const auto &kv : presets[preset]) {
        std::string dotted = kv.first.as<std::string>();
        std::vector<std::string> parts;
        std::stringstream ss(dotted);
        for (std::string part; std::getline(ss, part, '.');) {
          parts.push_back(part);
        }
        if (parts.empty()) {
          continue;
        }
        YAML::Node target = out;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
          if (!target[parts[i]] || !target[parts[i]].IsMap()) {
            target[parts[i]] = YAML::Node(YAML::NodeType::Map);
          }
          target.reset(target[parts[i]]);
        }
        target[parts.back()] = YAML::Clone(kv.second);
      }
    }
  }
  out.remove("presets");
  return out;
}

ExperimentSpec build_spec(const YAML::Node &root, Issues &issues) {
  ExperimentSpec spec;
  if (!root.IsMap()) {
    add(issues, root, "config must be a map");
    return spec;
  }
  check_keys(root, kTopKeys, "", issues);

  if (root["figure"]) {
    spec.figure = scalar_string(root["figure"], "figure", issues).value_or("");
  } else {
    add(issues, root, "figure required");
  }
  if (root["description"]) {
    spec.description = scalar_string(root["description"], "description", issues).value_or("");
  }
  if (root["kind"]) {
    std::string kind = scalar_string(root["kind"], "kind", issues).value_or("");
    if (kind == "scatter") {
      spec.kind = ExperimentKind::Scatter;
    } else if (kind != "sample_cost") {
      add(issues, root["kind"], "kind must be sample_cost or scatter");
    }
  }
  if (root["seed"]) {
    try {
      spec.seed = root["seed"].as<std::uint64_t>();
    } catch (const YAML::Exception &) {
      add(issues, root["seed"], "seed must be a nonnegative integer");
    }
  } else {
    add(issues, root, "seed required");
  }

  YAML::Node state = root["state"];
  if (!state || !state.IsMap()) {
    add(issues, state ? state : root, "state required (map with family and n)");
  } else {
    for (const auto &kv : state) {
      std::string key = kv.first.as<std::string>();
      if (key == "family") {
        spec.family = scalar_string(kv.second, "state.family", issues).value_or("");
        const auto &fams = state_families();
        if (std::find(fams.begin(), fams.end(), spec.family) == fams.end()) {
          add(issues, kv.second, "state.family: unknown family '" + spec.family + "'");
        }
      } else if (kStateParams.contains(key)) {
        spec.state_axes.push_back({key, parse_sweep(kv.second, "state." + key, issues)});
      } else {
        add(issues, kv.first, "unknown key 'state." + key + "'");
      }
    }
    auto n_axis = std::find_if(spec.state_axes.begin(), spec.state_axes.end(),
                               [](const Axis &a) { return a.name == "n"; });
    if (n_axis == spec.state_axes.end()) {
      add(issues, state, "state.n required");
    } else {
      for (double n : n_axis->values) {
        if (n < 1 || n != std::floor(n)) {
          add(issues, state["n"], "state.n: qubit counts must be positive integers");
          break;
        }
      }
    }
    if (spec.family.empty()) {
      add(issues, state, "state.family required");
    }
  }

  YAML::Node noise = root["noise"];
  if (!noise) {
    spec.noises.push_back({"none", std::nullopt, false, ""});
  } else if (noise.IsSequence()) {
    for (const auto &item : noise) {
      spec.noises.push_back(parse_noise(item, issues));
    }
  } else {
    spec.noises.push_back(parse_noise(noise, issues));
  }

  if (root["eps"]) {
    spec.eps = parse_sweep(root["eps"], "eps", issues);
    for (double e : spec.eps) {
      if (!(e > 0.0 && e <= 1.0)) {
        add(issues, root["eps"], "eps: values must lie in (0, 1]");
        break;
      }
    }
  }
  bool needs_eps = std::any_of(spec.noises.begin(), spec.noises.end(),
                               [](const NoiseSpec &s) { return s.needs_eps(); });
  if (needs_eps && spec.eps.empty() && !root["eps"]) {
    add(issues, root, "eps required by the noise model");
  }

  if (root["observable"]) {
    spec.observable = scalar_string(root["observable"], "observable", issues).value_or("");
    if (spec.observable != "fidelity" && spec.observable != "z_prefix") {
      add(issues, root["observable"], "observable must be fidelity or z_prefix");
    }
  }
  if (root["weight"]) {
    spec.weights = parse_sweep(root["weight"], "weight", issues);
  }
  if (spec.observable == "z_prefix" && spec.weights.empty()) {
    add(issues, root, "weight required for the z_prefix observable");
  }

  if (root["draws"]) {
    try {
      spec.draws = root["draws"].as<int>();
    } catch (const YAML::Exception &) {
      add(issues, root["draws"], "draws must be an integer");
    }
    if (spec.draws < 1) {
      add(issues, root["draws"], "draws must be at least 1");
    }
  }

  if (spec.kind == ExperimentKind::SampleCost) {
    YAML::Node reuse = root["reuse"];
    if (!reuse) {
      add(issues, root, "reuse required");
    } else {
      std::vector<YAML::Node> items;
      if (reuse.IsSequence()) {
        for (const auto &item : reuse) {
          items.push_back(item);
        }
      } else {
        items.push_back(reuse);
      }
      for (const auto &item : items) {
        if (!item.IsScalar()) {
          add(issues, item, "reuse: expected a number or policy string");
          continue;
        }
        try {
          spec.reuse.push_back(ReusePolicy::parse(item.Scalar()));
        } catch (const std::invalid_argument &e) {
          add(issues, item, e.what());
        }
      }
    }
    auto read_list = [&](const char *key, auto parse, auto &dest) {
      YAML::Node node = root[key];
      if (!node) {
        add(issues, root, std::string(key) + " required");
        return;
      }
      std::vector<YAML::Node> items;
      if (node.IsSequence()) {
        for (const auto &item : node) {
          items.push_back(item);
        }
      } else {
        items.push_back(node);
      }
      for (const auto &item : items) {
        try {
          dest.push_back(parse(item.Scalar()));
        } catch (const std::exception &e) {
          add(issues, item, std::string(key) + ": " + e.what());
        }
      }
    };
    read_list("ensembles", parse_ensemble, spec.ensembles);
    read_list("modes", parse_mode, spec.modes);
  }

  if (YAML::Node prec = root["precision"]) {
    check_keys(prec, {"r", "delta", "eps_abs"}, "precision", issues);
    if (prec["r"]) {
      spec.r = scalar_double(prec["r"], "precision.r", issues).value_or(spec.r);
    }
    if (prec["delta"]) {
      spec.delta = scalar_double(prec["delta"], "precision.delta", issues).value_or(spec.delta);
    }
    if (prec["eps_abs"]) {
      spec.eps_abs = scalar_double(prec["eps_abs"], "precision.eps_abs", issues);
      if (spec.eps_abs && !(*spec.eps_abs > 0.0)) {
        add(issues, prec["eps_abs"], "precision.eps_abs must be positive");
      }
    }
    if (!(spec.r > 0.0)) {
      add(issues, prec, "precision.r must be positive");
    }
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
      add(issues, prec, "precision.delta must lie in (0, 1)");
    }
  }

  if (root["closed_form"]) {
    std::string p = scalar_string(root["closed_form"], "closed_form", issues).value_or("");
    if (p == "prefer") {
      spec.closed_form = ClosedFormPolicy::Prefer;
    } else if (p == "never") {
      spec.closed_form = ClosedFormPolicy::Never;
    } else if (p != "auto") {
      add(issues, root["closed_form"], "closed_form must be prefer, auto or never");
    }
  }
  if (root["pair_budget"]) {
    spec.pair_budget =
        scalar_double(root["pair_budget"], "pair_budget", issues).value_or(spec.pair_budget);
  }
  if (root["output"]) {
    spec.output = scalar_string(root["output"], "output", issues).value_or("");
  }
  if (YAML::Node mc = root["mc"]) {
    check_keys(mc, {"circuits"}, "mc", issues);
    if (mc["circuits"]) {
      try {
        spec.mc_circuits = mc["circuits"].as<std::int64_t>();
      } catch (const YAML::Exception &) {
        add(issues, mc["circuits"], "mc.circuits must be an integer");
      }
      if (spec.mc_circuits < 2) {
        add(issues, mc["circuits"], "mc.circuits must be at least 2");
      }
    }
  }
  if (spec.output.empty() && !spec.figure.empty()) {
    spec.output = spec.figure + ".csv";
  }
  return spec;
}

ExperimentSpec parse_root(const YAML::Node &root, const std::string &preset, Issues &issues) {
  YAML::Node resolved = apply_preset(root, preset, issues);
  ExperimentSpec spec = build_spec(resolved, issues);
  spec.preset = preset;
  return spec;
}

YAML::Node load_yaml(const std::string &text, Issues &issues) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException &e) {
    issues.push_back({e.mark.line + 1, e.mark.column + 1, e.msg});
  }
  return YAML::Node();
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({{0, 0, "cannot open '" + path + "'"}});
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string ConfigIssue::str() const {
  if (line > 0) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }
  return message;
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid config";
        for (const auto &i : issues) {
          msg += "\n  " + i.str();
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

bool NoiseSpec::needs_eps() const {
  if (strength || random_strength) {
    return false;
  }
  return model == "depolarizing" || model == "random_pauli" || model == "random_local_rotation" ||
         model == "collective_rotation";
}

bool NoiseSpec::is_stochastic() const {
  return model == "random_pauli" || model == "random_local_rotation" ||
         model == "random_single_error" || model == "random_coherent";
}

std::string NoiseSpec::label() const {
  std::string out = model;
  if (!pauli.empty()) {
    out += ":" + pauli;
  }
  if (strength) {
    out += "@" + format_double(*strength);
  } else if (random_strength) {
    out += "@random";
  }
  return out;
}

ReusePolicy ReusePolicy::parse(const std::string &text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      t += c;
    }
  }
  ReusePolicy p;
  if (t == "inf" || t == "infinity") {
    p.kind = Kind::Infinite;
    p.value = std::numeric_limits<double>::infinity();
    return p;
  }
  static const std::regex kScaled(R"(ceil\(([0-9.eE+\-]+)/eps\^2\))");
  static const std::regex kDim(R"(ceil\(d/eps\^2\))");
  std::smatch m;
  if (std::regex_match(t, m, kDim)) {
    p.kind = Kind::DimByEps;
    return p;
  }
  if (std::regex_match(t, m, kScaled)) {
    p.kind = Kind::ScaledByEps;
    p.value = std::stod(m[1].str());
    if (!(p.value > 0.0)) {
      throw std::invalid_argument("reuse: scale must be positive");
    }
    return p;
  }
  char *end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0') {
    throw std::invalid_argument("reuse: cannot parse policy '" + text +
                                "' (number, inf, ceil(c/eps^2) or ceil(d/eps^2))");
  }
  if (!(v >= 1.0)) {
    throw std::invalid_argument("reuse: R must be at least 1");
  }
  p.kind = Kind::Fixed;
  p.value = std::floor(v);
  return p;
}

double ReusePolicy::evaluate(int n, double eps) const {
  switch (kind) {
    case Kind::Fixed:
      return value;
    case Kind::Infinite:
      return value;
    case Kind::ScaledByEps:
    case Kind::DimByEps: {
      if (!(eps > 0.0)) {
        return std::numeric_limits<double>::infinity();
      }
      double c = kind == Kind::DimByEps ? std::ldexp(1.0, n) : value;
      return std::max(1.0, std::ceil(c / (eps * eps)));
    }
  }
  return value;
}

std::string ReusePolicy::str() const {
  switch (kind) {
    case Kind::Fixed:
      return format_double(value);
    case Kind::Infinite:
      return "inf";
    case Kind::ScaledByEps:
      return "ceil(" + format_double(value) + "/eps^2)";
    case Kind::DimByEps:
      return "ceil(d/eps^2)";
  }
  return "";
}

std::string to_string(ClosedFormPolicy p) {
  switch (p) {
    case ClosedFormPolicy::Prefer:
      return "prefer";
    case ClosedFormPolicy::Auto:
      return "auto";
    case ClosedFormPolicy::Never:
      return "never";
  }
  return "auto";
}

ExperimentSpec parse_config(const std::string &text, const std::string &preset) {
  Issues issues;
  YAML::Node root = load_yaml(text, issues);
  ExperimentSpec spec;
  if (issues.empty()) {
    spec = parse_root(root, preset, issues);
  }
  if (!issues.empty()) {
    throw ConfigError(std::move(issues));
  }
  return spec;
}

ExperimentSpec load_config(const std::string &path, const std::string &preset) {
  return parse_config(read_file(path), preset);
}

std::vector<ConfigIssue> validate_config(const std::string &path, const std::string &preset) {
  try {
    load_config(path, preset);
  } catch (const ConfigError &e) {
    return e.issues();
  }
  return {};
}

std::string dump_spec(const ExperimentSpec &spec) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "figure" << YAML::Value << spec.figure;
  out << YAML::Key << "kind" << YAML::Value
      << (spec.kind == ExperimentKind::Scatter ? "scatter" : "sample_cost");
  out << YAML::Key << "seed" << YAML::Value << spec.seed;
  out << YAML::Key << "state" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "family" << YAML::Value << spec.family;
  for (const Axis &a : spec.state_axes) {
    out << YAML::Key << a.name << YAML::Value << YAML::Flow << a.values;
  }
  out << YAML::EndMap;
  out << YAML::Key << "noise" << YAML::Value << YAML::BeginSeq;
  for (const NoiseSpec &n : spec.noises) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "model" << YAML::Value << n.model;
    if (!n.pauli.empty()) {
      out << YAML::Key << "pauli" << YAML::Value << n.pauli;
    }
    if (n.strength) {
      const char *key = n.model == "collective_rotation" ? "theta"
                        : n.model == "random_pauli"      ? "beta"
                                                         : "p";
      out << YAML::Key << key << YAML::Value << *n.strength;
    }
    if (n.random_strength) {
      out << YAML::Key << "random" << YAML::Value << true;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (!spec.eps.empty()) {
    out << YAML::Key << "eps" << YAML::Value << YAML::Flow << spec.eps;
  }
  out << YAML::Key << "observable" << YAML::Value << spec.observable;
  if (!spec.weights.empty()) {
    out << YAML::Key << "weight" << YAML::Value << YAML::Flow << spec.weights;
  }
  out << YAML::Key << "draws" << YAML::Value << spec.draws;
  if (spec.kind == ExperimentKind::SampleCost) {
    out << YAML::Key << "reuse" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const ReusePolicy &p : spec.reuse) {
      out << p.str();
    }
    out << YAML::EndSeq;
    out << YAML::Key << "ensembles" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (Ensemble e : spec.ensembles) {
      out << to_string(e);
    }
    out << YAML::EndSeq;
    out << YAML::Key << "modes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (EstimatorMode m : spec.modes) {
      out << to_string(m);
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "precision" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "r" << YAML::Value << spec.r;
  out << YAML::Key << "delta" << YAML::Value << spec.delta;
  if (spec.eps_abs) {
    out << YAML::Key << "eps_abs" << YAML::Value << *spec.eps_abs;
  }
  out << YAML::EndMap;
  out << YAML::Key << "closed_form" << YAML::Value << to_string(spec.closed_form);
  out << YAML::Key << "pair_budget" << YAML::Value << spec.pair_budget;
  out << YAML::Key << "output" << YAML::Value << spec.output;
  out << YAML::Key << "mc" << YAML::Value << YAML::BeginMap << YAML::Key << "circuits"
      << YAML::Value << spec.mc_circuits << YAML::EndMap;
  out << YAML::EndMap;
  return out.c_str();
}

std::vector<ManifestEntry> load_manifest(const std::string &path) {
  Issues issues;
  YAML::Node root = load_yaml(read_file(path), issues);
  std::vector<ManifestEntry> out;
  if (issues.empty()) {
    YAML::Node figs = root["figures"];
    if (!figs || !figs.IsSequence()) {
      add(issues, root, "manifest: figures list required");
    } else {
      for (const auto &item : figs) {
        if (!item["id"] || !item["config"]) {
          add(issues, item, "manifest: each figure needs id and config");
          continue;
        }
        out.push_back({item["id"].as<std::string>(), item["config"].as<std::string>(),
                       item["description"] ? item["description"].as<std::string>() : ""});
      }
    }
  }
  if (!issues.empty()) {
    throw ConfigError(std::move(issues));
  }
  return out;
}

}  // namespace crmshadow::experiments
