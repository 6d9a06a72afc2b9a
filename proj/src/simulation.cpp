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

#include "typedpa/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "typedpa/error.hpp"

namespace typedpa {

std::vector<std::uint64_t> CheckpointSchedule(std::uint64_t n_max,
                                              double ratio,
                                              const std::vector<Window>& dense) {
  if (!(ratio > 1.0)) ThrowInvalid("checkpoint ratio must be > 1");
  std::uint64_t dense_total = 0;
  for (const auto& [lo, hi] : dense) {
    if (lo > hi) ThrowInvalid("dense window has lo > hi");
    if (lo <= n_max) dense_total += std::min(hi, n_max) - lo + 1;
  }
  if (dense_total > kMaxDenseCheckpoints) {
    ThrowInvalid("dense windows request more than 1e5 stored steps");
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 0; c < n_max;) {
    out.push_back(c);
    const auto scaled = static_cast<std::uint64_t>(
        std::floor(static_cast<double>(c) * ratio));
    c = std::max(c + 1, scaled);
  }
  out.push_back(n_max);
  for (const auto& [lo, hi] : dense) {
    for (std::uint64_t n = lo; n <= std::min(hi, n_max); ++n) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RunResult SimulateRun(const RunSpec& spec, Rng& rng) {
  GraphState state(spec.start, spec.alpha);
  if (spec.rule.num_types() != state.num_types()) {
    ThrowInvalid("rule and start graph disagree on the number of types");
  }
  const auto schedule =
      CheckpointSchedule(spec.n_max, spec.checkpoint_ratio, spec.dense_windows);
  state.Reserve(spec.n_max, spec.rule.m());

  RunResult result;
  result.records.reserve(schedule.size());
  for (std::uint64_t target : schedule) {
    while (state.step() < target) state.AddVertex(spec.rule, rng);
    if (spec.check_invariants) state.CheckInvariants();
    const TrajectoryRecord* prev =
        result.records.empty() ? nullptr : &result.records.back();
    result.records.push_back(Record(state, prev));
  }
  result.summary = ConvergenceReport(result.records);
  return result;
}

}  // namespace typedpa
