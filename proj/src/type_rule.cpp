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

#include "typedpa/type_rule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "typedpa/error.hpp"

namespace typedpa {
namespace {

constexpr double kProbabilityTolerance = 1e-12;

void CompositionsInto(std::uint32_t remaining, std::size_t index,
                      CountVector& current, std::vector<CountVector>& out) {
  if (index + 1 == current.size()) {
    current[index] = remaining;
    out.push_back(current);
    return;
  }
  for (std::uint32_t v = remaining + 1; v-- > 0;) {
    current[index] = v;
    CompositionsInto(remaining - v, index + 1, current, out);
  }
}

std::string FormatCounts(std::span<const std::uint32_t> u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(u[i]);
  }
  return s + ")";
}

void ValidateDistribution(std::span<const double> p, std::size_t num_types,
                          const CountVector& key) {
  if (p.size() != num_types) {
    ThrowInvalid("p_u for u=" + FormatCounts(key) + " has " +
                 std::to_string(p.size()) + " entries, expected " +
                 std::to_string(num_types));
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      ThrowInvalid("p_u for u=" + FormatCounts(key) +
                   " has a negative or NaN entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    ThrowInvalid("p_u for u=" + FormatCounts(key) + " sums to " +
                 std::to_string(sum));
  }
}

TypeIndex SampleFromDistribution(std::span<const double> p, Rng& rng) {
  const double r = rng.Uniform();
  double acc = 0.0;
  TypeIndex last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last_positive = static_cast<TypeIndex>(i);
    if (r < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace

std::string_view RuleKindName(RuleKind kind) {
  switch (kind) {
    case RuleKind::kRps:
      return "rps";
    case RuleKind::kLinear:
      return "linear";
    case RuleKind::kUniformVisible:
      return "uniform_visible";
    case RuleKind::kTable:
      return "table";
  }
  return "?";
}

std::vector<CountVector> Compositions(std::uint32_t total, std::size_t parts) {
  std::vector<CountVector> out;
  if (parts == 0) return out;
  CountVector current(parts, 0);
  CompositionsInto(total, 0, current, out);
  return out;
}

TypeIndex RpsWinner(TypeIndex a, TypeIndex b) {
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  if (a == kRock && b == kPaper) return kPaper;
  if (a == kPaper && b == kScissors) return kScissors;
  return kRock;  // rock vs scissors
}

TypeRule TypeRule::RockPaperScissors() {
  return TypeRule(RuleKind::kRps, 3, 2);
}

TypeRule TypeRule::Linear(std::size_t num_types, std::uint32_t m) {
  if (num_types < 1 || m < 1) ThrowInvalid("linear rule needs N >= 1, m >= 1");
  return TypeRule(RuleKind::kLinear, num_types, m);
}

TypeRule TypeRule::UniformVisible(std::size_t num_types, std::uint32_t m) {
  if (num_types < 1 || m < 1) {
    ThrowInvalid("uniform_visible rule needs N >= 1, m >= 1");
  }
  return TypeRule(RuleKind::kUniformVisible, num_types, m);
}

TypeRule TypeRule::Table(std::size_t num_types, std::uint32_t m,
                         std::map<CountVector, std::vector<double>> entries) {
  if (num_types < 1 || m < 1) ThrowInvalid("table rule needs N >= 1, m >= 1");
  for (const auto& [u, p] : entries) {
    if (u.size() != num_types) {
      ThrowInvalid("table key " + FormatCounts(u) + " has wrong length");
    }
    if (std::accumulate(u.begin(), u.end(), std::uint64_t{0}) != m) {
      ThrowInvalid("table key " + FormatCounts(u) + " does not sum to m=" +
                   std::to_string(m));
    }
    ValidateDistribution(p, num_types, u);
  }
  for (const auto& u : Compositions(m, num_types)) {
    if (!entries.contains(u)) {
      ThrowInvalid("table rule has no p_u for u=" + FormatCounts(u));
    }
  }
  TypeRule rule(RuleKind::kTable, num_types, m);
  rule.table_ = std::move(entries);
  return rule;
}

TypeRule TypeRule::ParseTable(std::istream& in) {
  std::map<CountVector, std::vector<double>> entries;
  std::size_t num_types = 0;
  std::uint32_t m = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      ThrowInvalid("table line " + std::to_string(line_no) + ": missing ':'");
    }
    std::istringstream lhs(line.substr(0, colon));
    std::istringstream rhs(line.substr(colon + 1));
    CountVector u;
    std::vector<double> p;
    for (long long v; lhs >> v;) {
      if (v < 0) {
        ThrowInvalid("table line " + std::to_string(line_no) +
                     ": negative count");
      }
      u.push_back(static_cast<std::uint32_t>(v));
    }
    if (!lhs.eof()) {
      ThrowInvalid("table line " + std::to_string(line_no) + ": bad count");
    }
    for (double v; rhs >> v;) p.push_back(v);
    if (!rhs.eof()) {
      ThrowInvalid("table line " + std::to_string(line_no) +
                   ": bad probability");
    }
    const auto sum = static_cast<std::uint32_t>(
        std::accumulate(u.begin(), u.end(), std::uint64_t{0}));
    if (entries.empty()) {
      num_types = u.size();
      m = sum;
    } else if (u.size() != num_types || sum != m) {
      ThrowInvalid("table line " + std::to_string(line_no) +
                   ": inconsistent N or m");
    }
    if (!entries.emplace(std::move(u), std::move(p)).second) {
      ThrowInvalid("table line " + std::to_string(line_no) + ": duplicate u");
    }
  }
  if (entries.empty()) ThrowInvalid("table rule file has no entries");
  return Table(num_types, m, std::move(entries));
}

TypeRule TypeRule::LoadTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowIo("cannot open table rule file " + path.string());
  return ParseTable(in);
}

TypeRule TypeRule::Builtin(std::string_view kind, std::size_t num_types,
                           std::uint32_t m) {
  if (kind == "rps") {
    if (num_types != 3 || m != 2) {
      ThrowInvalid("the rps rule requires N = 3 and m = 2");
    }
    return RockPaperScissors();
  }
  if (kind == "linear") return Linear(num_types, m);
  if (kind == "uniform_visible") return UniformVisible(num_types, m);
  ThrowInvalid("unknown rule kind '" + std::string(kind) + "'");
}

void TypeRule::CheckCounts(std::span<const std::uint32_t> u) const {
  if (u.size() != num_types_) {
    ThrowInvalid("count vector has length " + std::to_string(u.size()) +
                 ", rule has N=" + std::to_string(num_types_));
  }
  std::uint64_t sum = 0;
  for (auto v : u) sum += v;
  if (sum != m_) {
    ThrowInvalid("count vector " + FormatCounts(u) + " does not sum to m=" +
                 std::to_string(m_));
  }
}

const std::vector<double>& TypeRule::TableRow(
    std::span<const std::uint32_t> u) const {
  auto it = table_.find(CountVector(u.begin(), u.end()));
  if (it == table_.end()) {
    ThrowInvalid("table rule has no p_u for u=" + FormatCounts(u));
  }
  return it->second;
}

std::vector<double> TypeRule::AssignDistribution(
    std::span<const std::uint32_t> u) const {
  CheckCounts(u);
  std::vector<double> p(num_types_, 0.0);
  switch (kind_) {
    case RuleKind::kRps: {
      TypeIndex a = 0, b = 0;
      bool first = true;
      for (TypeIndex i = 0; i < 3; ++i) {
        for (std::uint32_t c = 0; c < u[i]; ++c) {
          (first ? a : b) = i;
          first = false;
        }
      }
      p[RpsWinner(a, b)] = 1.0;
      break;
    }
    case RuleKind::kLinear:
      for (std::size_t i = 0; i < num_types_; ++i) {
        p[i] = static_cast<double>(u[i]) / m_;
      }
      break;
    case RuleKind::kUniformVisible: {
      const auto visible = std::count_if(u.begin(), u.end(),
                                         [](std::uint32_t c) { return c > 0; });
      for (std::size_t i = 0; i < num_types_; ++i) {
        if (u[i] > 0) p[i] = 1.0 / static_cast<double>(visible);
      }
      break;
    }
    case RuleKind::kTable:
      p = TableRow(u);
      break;
  }
  return p;
}

TypeIndex TypeRule::SampleType(std::span<const std::uint32_t> u,
                               Rng& rng) const {
  CheckCounts(u);
  switch (kind_) {
    case RuleKind::kRps: {
      TypeIndex a = 0, b = 0;
      bool first = true;
      for (TypeIndex i = 0; i < 3; ++i) {
        for (std::uint32_t c = 0; c < u[i]; ++c) {
          (first ? a : b) = i;
          first = false;
        }
      }
      return RpsWinner(a, b);
    }
    case RuleKind::kLinear: {
      // Copy the type of a uniformly chosen neighbor.
      std::uint64_t r = rng.Below(m_);
      for (std::size_t i = 0; i < num_types_; ++i) {
        if (r < u[i]) return static_cast<TypeIndex>(i);
        r -= u[i];
      }
      break;
    }
    case RuleKind::kUniformVisible: {
      std::uint64_t visible = 0;
      for (auto c : u) visible += c > 0;
      std::uint64_t r = rng.Below(visible);
      for (std::size_t i = 0; i < num_types_; ++i) {
        if (u[i] > 0 && r-- == 0) return static_cast<TypeIndex>(i);
      }
      break;
    }
    case RuleKind::kTable:
      return SampleFromDistribution(TableRow(u), rng);
  }
  throw Error(ErrorCode::kInternal, "SampleType fell through");
}

}  // namespace typedpa
