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

#include "typedpa/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "typedpa/error.hpp"

namespace typedpa {
namespace {

Vec3 AsVec3(const std::vector<double>& shares) {
  if (shares.size() != 3) ThrowInvalid("expected three shares");
  return {shares[0], shares[1], shares[2]};
}

double WrapAngle(double d) {
  while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
  while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

bool AtCenter(const Vec3& p) {
  const ChartPoint c = ToChart(p);
  return std::hypot(c.u, c.v) < 1e-12;
}

}  // namespace

TrajectoryRecord RecordFromShares(std::uint64_t n, double gamma,
                                  std::vector<double> shares,
                                  const TrajectoryRecord* previous) {
  TrajectoryRecord r;
  r.n = n;
  r.gamma = gamma;
  r.product = 1.0;
  for (double s : shares) r.product *= s;
  r.shares = std::move(shares);
  if (r.shares.size() == 3) {
    const double raw = ChartAngle(AsVec3(r.shares));
    if (previous == nullptr) {
      r.theta = raw;
    } else {
      // The angle is undefined at the center itself (the K3 and K6 starts
      // sit there); such a step contributes no winding.
      const Vec3 prev = AsVec3(previous->shares);
      const bool at_center =
          AtCenter(prev) || AtCenter(AsVec3(r.shares));
      const double step =
          at_center ? 0.0 : WrapAngle(raw - ChartAngle(prev));
      r.theta = previous->theta + step;
      r.theta_flag = std::abs(step) > kThetaFlagThreshold;
    }
  }
  return r;
}

TrajectoryRecord Record(const GraphState& state,
                        const TrajectoryRecord* previous) {
  TrajectoryRecord r =
      RecordFromShares(state.step(), state.gamma(), state.Shares(), previous);
  const auto counts = state.type_vertex_counts();
  r.vertex_counts.assign(counts.begin(), counts.end());
  return r;
}

Vec3 RealizedNoise(const TrajectoryRecord& prev, const TrajectoryRecord& next) {
  const Vec3 a = AsVec3(prev.shares);
  const Vec3 b = AsVec3(next.shares);
  const Vec3 drift = FieldEval(a);
  const auto n = static_cast<double>(prev.n);
  return {n * (b[0] - a[0]) - drift[0], n * (b[1] - a[1]) - drift[1],
          n * (b[2] - a[2]) - drift[2]};
}

std::vector<Circuit> Circuits(std::span<const TrajectoryRecord> records) {
  std::vector<Circuit> out;
  if (records.empty()) return out;
  const double two_pi = 2.0 * std::numbers::pi;
  const double origin = records.front().theta;
  int up = 0, down = 0;
  for (const auto& r : records) {
    const double turned = r.theta - origin;
    while (turned >= two_pi * (up + 1)) out.push_back({++up, r.n});
    while (turned <= -two_pi * (down + 1)) out.push_back({-(++down), r.n});
  }
  return out;
}

double ProductRange(std::span<const TrajectoryRecord> records,
                    std::uint64_t lo, std::uint64_t hi) {
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  for (const auto& r : records) {
    if (r.n < lo || r.n > hi) continue;
    mn = std::min(mn, r.product);
    mx = std::max(mx, r.product);
  }
  return mx >= mn ? mx - mn : 0.0;
}

std::vector<double> CoordinateRanges(std::span<const TrajectoryRecord> records,
                                     std::uint64_t lo, std::uint64_t hi) {
  if (records.empty()) return {};
  const std::size_t k = records.front().shares.size();
  std::vector<double> mn(k, std::numeric_limits<double>::infinity());
  std::vector<double> mx(k, -std::numeric_limits<double>::infinity());
  bool any = false;
  for (const auto& r : records) {
    if (r.n < lo || r.n > hi) continue;
    any = true;
    for (std::size_t i = 0; i < k; ++i) {
      mn[i] = std::min(mn[i], r.shares[i]);
      mx[i] = std::max(mx[i], r.shares[i]);
    }
  }
  std::vector<double> out(k, 0.0);
  if (any) {
    for (std::size_t i = 0; i < k; ++i) out[i] = mx[i] - mn[i];
  }
  return out;
}

double ThetaAt(std::span<const TrajectoryRecord> records,
               std::uint64_t target) {
  if (records.empty()) ThrowInvalid("no records");
  auto it = std::upper_bound(
      records.begin(), records.end(), target,
      [](std::uint64_t n, const TrajectoryRecord& r) { return n < r.n; });
  if (it == records.begin()) return records.front().theta;
  return std::prev(it)->theta;
}

RunSummary ConvergenceReport(std::span<const TrajectoryRecord> records) {
  RunSummary s;
  if (records.empty()) return s;
  const auto& last = records.back();
  s.final_product = last.product;
  s.window_hi = last.n;
  s.window_lo = last.n / 10;
  s.product_range = ProductRange(records, s.window_lo, s.window_hi);
  s.coordinate_ranges = CoordinateRanges(records, s.window_lo, s.window_hi);
  s.dtheta = last.theta - records.front().theta;
  s.circuits = Circuits(records);
  for (const auto& r : records) s.theta_flags += r.theta_flag;
  return s;
}

}  // namespace typedpa
