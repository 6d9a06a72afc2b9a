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

#ifndef TYPEDPA_OBSERVABLES_HPP_
#define TYPEDPA_OBSERVABLES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "typedpa/graph_state.hpp"
#include "typedpa/vector_field.hpp"

namespace typedpa {

// Consecutive checkpoints whose wrapped angle increment exceeds this are
// flagged: the unwrapped winding could alias and denser checkpoints are
// needed.
inline constexpr double kThetaFlagThreshold = 1.5707963267948966;  // pi/2

struct TrajectoryRecord {
  std::uint64_t n = 0;
  double gamma = 0.0;
  std::vector<double> shares;
  double product = 0.0;  // M = product of the shares
  // Unwrapped winding angle about the center in the vector_field chart; only
  // meaningful for three types, 0 otherwise.
  double theta = 0.0;
  bool theta_flag = false;
  std::vector<std::uint64_t> vertex_counts;
};

TrajectoryRecord Record(const GraphState& state,
                        const TrajectoryRecord* previous = nullptr);
TrajectoryRecord RecordFromShares(std::uint64_t n, double gamma,
                                  std::vector<double> shares,
                                  const TrajectoryRecord* previous = nullptr);

// n * (shares_next - shares_prev) - P(shares_prev): the realized noise plus
// remainder of the stochastic approximation step. Three types only.
Vec3 RealizedNoise(const TrajectoryRecord& prev, const TrajectoryRecord& next);

struct Circuit {
  int index = 0;         // +i for the i-th counterclockwise turn, -i otherwise
  std::uint64_t n = 0;   // first checkpoint at which theta reached 2*pi*i
};

std::vector<Circuit> Circuits(std::span<const TrajectoryRecord> records);

struct RunSummary {
  double final_product = 0.0;
  std::uint64_t window_lo = 0;  // last decade: [n_max / 10, n_max]
  std::uint64_t window_hi = 0;
  double product_range = 0.0;
  std::vector<double> coordinate_ranges;
  double dtheta = 0.0;  // theta(last) - theta(first)
  std::vector<Circuit> circuits;
  std::size_t theta_flags = 0;
};

RunSummary ConvergenceReport(std::span<const TrajectoryRecord> records);

// Extremes over records with lo <= n <= hi.
double ProductRange(std::span<const TrajectoryRecord> records,
                    std::uint64_t lo, std::uint64_t hi);
std::vector<double> CoordinateRanges(std::span<const TrajectoryRecord> records,
                                     std::uint64_t lo, std::uint64_t hi);
// Theta at the last record with n <= target (records sorted by n).
double ThetaAt(std::span<const TrajectoryRecord> records, std::uint64_t target);

}  // namespace typedpa

#endif  // TYPEDPA_OBSERVABLES_HPP_
