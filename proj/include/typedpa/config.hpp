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

#ifndef TYPEDPA_CONFIG_HPP_
#define TYPEDPA_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "typedpa/simulation.hpp"
#include "typedpa/type_rule.hpp"

namespace typedpa {

// Flat "key = value" experiment description. Keys:
//   model             rps | linear | uniform_visible | path to a table file
//   start             k3 | k6 | path to an edge-list file
//   m                 neighbors per new vertex
//   alpha             affine offset, > -2
//   n_max             vertices to add
//   seeds             a count (runs use seeds 0..count-1) or a list "3,7,11"
//   master_seed       combined with each run seed into a generator stream
//   checkpoint_ratio  geometric checkpoint spacing, > 1
//   dense_windows     "lo:hi;lo:hi" ranges recorded at every step
//   output_dir        where artifacts go (default: $TYPED_PA_OUT or ./out)
//   workers           concurrent runs
struct ExperimentConfig {
  std::string model = "rps";
  std::string start = "k3";
  std::uint32_t m = 2;
  double alpha = 0.0;
  std::uint64_t n_max = 10000;
  std::uint64_t seed_count = 200;
  std::vector<std::uint64_t> seed_list;  // overrides seed_count when set
  std::uint64_t master_seed = 1;
  double checkpoint_ratio = 1.01;
  std::vector<Window> dense_windows;
  std::filesystem::path output_dir = DefaultOutputDir();
  unsigned workers = 1;

  static std::filesystem::path DefaultOutputDir();

  void Set(std::string_view key, std::string_view value);
  std::vector<std::uint64_t> Seeds() const;

  // Result-affecting keys in a fixed order, one "key = value" per line.
  // output_dir and workers are excluded: they never change the results.
  std::string Canonical() const;

  // Throws if a value is out of range or a referenced file is missing.
  void Validate() const;

  TypeRule BuildRule(std::size_t num_types) const;
  RunSpec BuildRunSpec() const;
};

// Ordered "key = value" pairs; later entries override earlier ones.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

ConfigEntries ParseConfigText(std::istream& in);
ConfigEntries ReadConfigFile(const std::filesystem::path& path);
void ApplyConfigEntries(ExperimentConfig& cfg, const ConfigEntries& entries);

void ApplyConfigText(ExperimentConfig& cfg, std::istream& in);
void ApplyConfigFile(ExperimentConfig& cfg, const std::filesystem::path& path);

}  // namespace typedpa

#endif  // TYPEDPA_CONFIG_HPP_
