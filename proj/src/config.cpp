// Copyright 2026 The typed-pa Authors
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

#include "typedpa/config.hpp"

#include <algorithm>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "typedpa/csv.hpp"
#include "typedpa/error.hpp"

namespace typedpa {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    ThrowInvalid("config key '" + std::string(key) +
                 "': expected a nonnegative integer, got '" + std::string(v) +
                 "'");
  }
  return out;
}

double ParseReal(std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    ThrowInvalid("config key '" + std::string(key) + "': expected a number, got '" +
                 s + "'");
  }
  return out;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool IsBuiltinModel(std::string_view model) {
  return model == "rps" || model == "linear" || model == "uniform_visible";
}

bool IsBuiltinStart(std::string_view start) {
  return start == "k3" || start == "k6";
}

}  // namespace

std::filesystem::path ExperimentConfig::DefaultOutputDir() {
  if (const char* env = std::getenv("TYPED_PA_OUT"); env && *env) return env;
  return "out";
}

void ExperimentConfig::Set(std::string_view key, std::string_view raw) {
  const std::string_view value = Trim(raw);
  if (key == "model") {
    model = value;
  } else if (key == "start") {
    start = value;
  } else if (key == "m") {
    const auto v = ParseUnsigned(key, value);
    if (v == 0 || v > 64) ThrowInvalid("config key 'm' must be in 1..64");
    m = static_cast<std::uint32_t>(v);
  } else if (key == "alpha") {
    alpha = ParseReal(key, value);
  } else if (key == "n_max") {
    n_max = ParseUnsigned(key, value);
  } else if (key == "seeds") {
    if (value.find(',') != std::string_view::npos) {
      seed_list.clear();
      for (auto part : Split(value, ',')) {
        seed_list.push_back(ParseUnsigned(key, part));
      }
    } else {
      seed_list.clear();
      seed_count = ParseUnsigned(key, value);
    }
  } else if (key == "seed_list") {
    seed_list.clear();
    for (auto part : Split(value, ',')) {
      seed_list.push_back(ParseUnsigned(key, part));
    }
  } else if (key == "master_seed") {
    master_seed = ParseUnsigned(key, value);
  } else if (key == "checkpoint_ratio") {
    checkpoint_ratio = ParseReal(key, value);
  } else if (key == "dense_windows") {
    dense_windows.clear();
    if (!value.empty()) {
      for (auto part : Split(value, ';')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) {
          ThrowInvalid("dense window '" + std::string(part) +
                       "' must look like lo:hi");
        }
        dense_windows.emplace_back(
            ParseUnsigned(key, Trim(part.substr(0, colon))),
            ParseUnsigned(key, Trim(part.substr(colon + 1))));
      }
    }
  } else if (key == "output_dir") {
    output_dir = std::filesystem::path(std::string(value));
  } else if (key == "workers") {
    const auto v = ParseUnsigned(key, value);
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, v));
  } else {
    ThrowInvalid("unknown config key '" + std::string(key) + "'");
  }
}

std::vector<std::uint64_t> ExperimentConfig::Seeds() const {
  if (!seed_list.empty()) return seed_list;
  std::vector<std::uint64_t> s(seed_count);
  for (std::uint64_t i = 0; i < seed_count; ++i) s[i] = i;
  return s;
}

std::string ExperimentConfig::Canonical() const {
  std::ostringstream out;
  out << "model = " << model << '\n'
      << "start = " << start << '\n'
      << "m = " << m << '\n'
      << "alpha = " << FormatDouble(alpha) << '\n'
      << "n_max = " << n_max << '\n';
  if (seed_list.empty()) {
    out << "seeds = " << seed_count << '\n';
  } else {
    out << "seed_list = ";
    for (std::size_t i = 0; i < seed_list.size(); ++i) {
      out << (i ? "," : "") << seed_list[i];
    }
    out << '\n';
  }
  out << "master_seed = " << master_seed << '\n'
      << "checkpoint_ratio = " << FormatDouble(checkpoint_ratio) << '\n'
      << "dense_windows = ";
  for (std::size_t i = 0; i < dense_windows.size(); ++i) {
    out << (i ? ";" : "") << dense_windows[i].first << ':'
        << dense_windows[i].second;
  }
  out << '\n';
  return out.str();
}

void ExperimentConfig::Validate() const {
  if (n_max < 1) ThrowInvalid("n_max must be >= 1");
  if (!(checkpoint_ratio > 1.0)) ThrowInvalid("checkpoint_ratio must be > 1");
  if (!(alpha > -2.0)) ThrowInvalid("alpha must be > -2");
  if (Seeds().empty()) ThrowInvalid("at least one seed is required");
  if (!IsBuiltinModel(model) && !std::filesystem::exists(model)) {
    ThrowInvalid("model '" + model +
                 "' is neither a built-in rule nor an existing table file");
  }
  if (!IsBuiltinStart(start) && !std::filesystem::exists(start)) {
    ThrowInvalid("start '" + start +
                 "' is neither a built-in graph nor an existing file");
  }
  if (model == "rps" && m != 2) ThrowInvalid("the rps model requires m = 2");
  if (!(m + alpha > 0.0)) ThrowInvalid("m + alpha must be > 0");
  CheckpointSchedule(1, checkpoint_ratio, dense_windows);
  // Dense-window volume is checked against n_max when the run is built.
}

TypeRule ExperimentConfig::BuildRule(std::size_t num_types) const {
  if (IsBuiltinModel(model)) return TypeRule::Builtin(model, num_types, m);
  TypeRule rule = TypeRule::LoadTable(model);
  if (rule.m() != m) {
    ThrowInvalid("table rule has m=" + std::to_string(rule.m()) +
                 " but the config says m=" + std::to_string(m));
  }
  return rule;
}

RunSpec ExperimentConfig::BuildRunSpec() const {
  Validate();
  RunSpec spec;
  spec.start = ResolveStartGraph(start);
  ValidateStartGraph(spec.start, alpha);
  spec.rule = BuildRule(spec.start.num_types);
  if (spec.rule.num_types() != spec.start.num_types) {
    ThrowInvalid("model and start graph disagree on the number of types");
  }
  spec.alpha = alpha;
  spec.n_max = n_max;
  spec.checkpoint_ratio = checkpoint_ratio;
  spec.dense_windows = dense_windows;
  CheckpointSchedule(n_max, checkpoint_ratio, dense_windows);
  return spec;
}

ConfigEntries ParseConfigText(std::istream& in) {
  ConfigEntries entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = Trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      ThrowInvalid("config line " + std::to_string(line_no) +
                   ": expected key = value");
    }
    entries.emplace_back(Trim(body.substr(0, eq)), Trim(body.substr(eq + 1)));
  }
  return entries;
}

ConfigEntries ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowIo("cannot open config file " + path.string());
  return ParseConfigText(in);
}

void ApplyConfigEntries(ExperimentConfig& cfg, const ConfigEntries& entries) {
  for (const auto& [key, value] : entries) cfg.Set(key, value);
}

void ApplyConfigText(ExperimentConfig& cfg, std::istream& in) {
  ApplyConfigEntries(cfg, ParseConfigText(in));
}

void ApplyConfigFile(ExperimentConfig& cfg, const std::filesystem::path& path) {
  ApplyConfigEntries(cfg, ReadConfigFile(path));
}

}  // namespace typedpa
