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

#ifndef TYPEDPA_SIMULATION_HPP_
#define TYPEDPA_SIMULATION_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "typedpa/graph_state.hpp"
#include "typedpa/observables.hpp"
#include "typedpa/rng.hpp"
#include "typedpa/type_rule.hpp"

namespace typedpa {

using Window = std::pair<std::uint64_t, std::uint64_t>;  // inclusive [lo, hi]

// Dense windows may hold at most this many checkpoints in total.
inline constexpr std::uint64_t kMaxDenseCheckpoints = 100000;

// 0, then geometrically spaced steps (next = max(c + 1, floor(c * ratio))),
// every step inside a dense window, and n_max. Sorted, unique.
std::vector<std::uint64_t> CheckpointSchedule(
    std::uint64_t n_max, double ratio, const std::vector<Window>& dense = {});

struct RunSpec {
  StartGraph start;
  TypeRule rule = TypeRule::RockPaperScissors();
  double alpha = 0.0;
  std::uint64_t n_max = 0;
  double checkpoint_ratio = 1.01;
  std::vector<Window> dense_windows;
  // Run the O(V + E) graph check at every checkpoint.
  bool check_invariants = false;
};

struct RunResult {
  std::vector<TrajectoryRecord> records;
  RunSummary summary;
};

RunResult SimulateRun(const RunSpec& spec, Rng& rng);

}  // namespace typedpa

#endif  // TYPEDPA_SIMULATION_HPP_
