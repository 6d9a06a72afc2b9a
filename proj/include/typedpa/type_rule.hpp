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

#ifndef TYPEDPA_TYPE_RULE_HPP_
#define TYPEDPA_TYPE_RULE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "typedpa/rng.hpp"

namespace typedpa {

using TypeIndex = std::uint32_t;

// Neighbor-type counts u: entry i is the number of sampled neighbors of
// type i. Always length N.
using CountVector = std::vector<std::uint32_t>;

inline constexpr TypeIndex kRock = 0;
inline constexpr TypeIndex kPaper = 1;
inline constexpr TypeIndex kScissors = 2;

enum class RuleKind { kRps, kLinear, kUniformVisible, kTable };

std::string_view RuleKindName(RuleKind kind);

// Every count vector of length `parts` with entries summing to `total`, in
// lexicographically decreasing order of the leading entries.
std::vector<CountVector> Compositions(std::uint32_t total, std::size_t parts);

// The assignment distributions p_u: which type a new vertex adopts given the
// types of its m sampled neighbors. Immutable once built; probabilities are
// validated at construction.
class TypeRule {
 public:
  static TypeRule RockPaperScissors();
  static TypeRule Linear(std::size_t num_types, std::uint32_t m);
  static TypeRule UniformVisible(std::size_t num_types, std::uint32_t m);
  static TypeRule Table(std::size_t num_types, std::uint32_t m,
                        std::map<CountVector, std::vector<double>> entries);

  // Text format, one line per count vector: "u_1 ... u_N : p_1 ... p_N".
  // Blank lines and lines starting with '#' are ignored.
  static TypeRule ParseTable(std::istream& in);
  static TypeRule LoadTable(const std::filesystem::path& path);

  // kind is one of "rps", "linear", "uniform_visible".
  static TypeRule Builtin(std::string_view kind, std::size_t num_types,
                          std::uint32_t m);

  RuleKind kind() const { return kind_; }
  std::size_t num_types() const { return num_types_; }
  std::uint32_t m() const { return m_; }

  std::vector<double> AssignDistribution(
      std::span<const std::uint32_t> u) const;
  TypeIndex SampleType(std::span<const std::uint32_t> u, Rng& rng) const;

 private:
  TypeRule(RuleKind kind, std::size_t num_types, std::uint32_t m)
      : kind_(kind), num_types_(num_types), m_(m) {}

  void CheckCounts(std::span<const std::uint32_t> u) const;
  const std::vector<double>& TableRow(std::span<const std::uint32_t> u) const;

  RuleKind kind_;
  std::size_t num_types_;
  std::uint32_t m_;
  std::map<CountVector, std::vector<double>> table_;
};

// Winner of a rock-paper-scissors game between two types: paper beats rock,
// scissors beats paper, rock beats scissors.
TypeIndex RpsWinner(TypeIndex a, TypeIndex b);

}  // namespace typedpa

#endif  // TYPEDPA_TYPE_RULE_HPP_
