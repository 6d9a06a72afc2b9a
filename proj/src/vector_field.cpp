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

#include "typedpa/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "typedpa/error.hpp"

namespace typedpa {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt6 = 1.0 / std::sqrt(6.0);
// Chart basis vectors embedded in R^3.
const Vec3 kB1 = {kInvSqrt2, -kInvSqrt2, 0.0};
const Vec3 kB2 = {kInvSqrt6, kInvSqrt6, -2.0 * kInvSqrt6};

ChartPoint TangentToChart(const Vec3& t) {
  return {(t[0] - t[1]) * kInvSqrt2, (t[0] + t[1] - 2.0 * t[2]) * kInvSqrt6};
}

double Product(const Vec3& p) { return p[0] * p[1] * p[2]; }

Vec3 Axpy(const Vec3& p, double a, const Vec3& k) {
  return {p[0] + a * k[0], p[1] + a * k[1], p[2] + a * k[2]};
}

struct RayHit {
  double radius;
  Vec3 point;
};

// Point on the ray from the center in direction `dir` (unit, tangent) where
// xyz == level. xyz is strictly decreasing along the ray up to the boundary.
RayHit BisectRay(const Vec3& dir, double level, std::size_t ray_index) {
  double r_max = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (dir[i] < 0.0) r_max = std::min(r_max, kCenter[i] / -dir[i]);
  }
  double lo = 0.0, hi = r_max;
  auto value = [&](double r) { return Product(Axpy(kCenter, r, dir)); };
  if (!(value(lo) > level) || !(value(hi) < level)) {
    ThrowDomain("level curve bisection failed to bracket on ray " +
                std::to_string(ray_index));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (value(mid) > level ? lo : hi) = mid;
  }
  const double r =
      std::abs(value(lo) - level) <= std::abs(value(hi) - level) ? lo : hi;
  const Vec3 p = Axpy(kCenter, r, dir);
  if (std::abs(Product(p) - level) > 1e-10) {
    ThrowDomain("level curve bisection did not converge on ray " +
                std::to_string(ray_index));
  }
  return {r, p};
}

Vec3 RayDirection(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {c * kB1[0] + s * kB2[0], c * kB1[1] + s * kB2[1],
          c * kB1[2] + s * kB2[2]};
}

void CheckLevel(double level) {
  if (!(level >= kMinLevel && level < kMaxProduct)) {
    ThrowDomain("level M=" + std::to_string(level) +
                " outside [1e-6, 1/27)");
  }
}

}  // namespace

Vec3 FieldEval(const Vec3& p) {
  const double x = p[0], y = p[1], z = p[2];
  return {0.5 * x * (z - y), 0.5 * y * (x - z), 0.5 * z * (y - x)};
}

double FieldNorm(const Vec3& p) {
  const Vec3 f = FieldEval(p);
  return std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
}

ChartPoint ToChart(const Vec3& p) { return TangentToChart(p); }

Vec3 FromChart(const ChartPoint& c) {
  return {kCenter[0] + c.u * kB1[0] + c.v * kB2[0],
          kCenter[1] + c.u * kB1[1] + c.v * kB2[1],
          kCenter[2] + c.u * kB1[2] + c.v * kB2[2]};
}

double ChartAngle(const Vec3& p) {
  const ChartPoint c = ToChart(p);
  return std::atan2(c.v, c.u);
}

double AngularVelocity(const Vec3& p) {
  const ChartPoint c = ToChart(p);
  const double r2 = c.u * c.u + c.v * c.v;
  if (r2 == 0.0) return 0.0;
  const ChartPoint w = TangentToChart(FieldEval(p));
  return (c.u * w.v - c.v * w.u) / r2;
}

std::array<std::complex<double>, 2> JacobianEigsCenter(double h) {
  auto chart_field = [](double u, double v) {
    return TangentToChart(FieldEval(FromChart({u, v})));
  };
  const ChartPoint du_plus = chart_field(h, 0.0), du_minus = chart_field(-h, 0.0);
  const ChartPoint dv_plus = chart_field(0.0, h), dv_minus = chart_field(0.0, -h);
  const double a = (du_plus.u - du_minus.u) / (2 * h);
  const double b = (dv_plus.u - dv_minus.u) / (2 * h);
  const double c = (du_plus.v - du_minus.v) / (2 * h);
  const double d = (dv_plus.v - dv_minus.v) / (2 * h);
  const double half_trace = 0.5 * (a + d);
  const double det = a * d - b * c;
  const std::complex<double> disc =
      std::sqrt(std::complex<double>(half_trace * half_trace - det, 0.0));
  return {half_trace + disc, half_trace - disc};
}

Vec3 Rk4Step(const Vec3& p, double dt) {
  const Vec3 k1 = FieldEval(p);
  const Vec3 k2 = FieldEval(Axpy(p, 0.5 * dt, k1));
  const Vec3 k3 = FieldEval(Axpy(p, 0.5 * dt, k2));
  const Vec3 k4 = FieldEval(Axpy(p, dt, k3));
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = p[i] + dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  }
  const double drift = (out[0] + out[1] + out[2] - 1.0) / 3.0;
  for (auto& c : out) c -= drift;
  return out;
}

std::vector<Vec3> Integrate(const Vec3& p0, double duration, double dt) {
  if (!(dt > 0.0)) ThrowInvalid("integration step must be positive");
  if (!(duration >= 0.0)) ThrowInvalid("integration duration must be >= 0");
  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  std::vector<Vec3> path;
  path.reserve(steps + 1);
  path.push_back(p0);
  Vec3 p = p0;
  for (std::size_t i = 0; i < steps; ++i) {
    p = Rk4Step(p, dt);
    path.push_back(p);
  }
  return path;
}

LevelCurve ExtractLevelCurve(double level, std::size_t resolution) {
  CheckLevel(level);
  if (resolution < 3) ThrowInvalid("level curve resolution must be >= 3");
  LevelCurve curve;
  curve.level = level;
  curve.points.reserve(resolution + 1);
  curve.ray_angles.reserve(resolution);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(resolution);
  double length_sum = 0.0, period_sum = 0.0;
  for (std::size_t k = 0; k < resolution; ++k) {
    const double phi = step * static_cast<double>(k);
    const Vec3 dir = RayDirection(phi);
    const Vec3 perp = RayDirection(phi + 0.5 * std::numbers::pi);
    const RayHit hit = BisectRay(dir, level, k);
    const Vec3& p = hit.point;
    const Vec3 grad = {p[1] * p[2], p[0] * p[2], p[0] * p[1]};
    const double g_r = grad[0] * dir[0] + grad[1] * dir[1] + grad[2] * dir[2];
    const double g_phi =
        hit.radius * (grad[0] * perp[0] + grad[1] * perp[1] + grad[2] * perp[2]);
    const double dr = -g_phi / g_r;
    const double speed = std::hypot(hit.radius, dr);
    length_sum += speed;
    period_sum += speed / FieldNorm(p);
    curve.points.push_back(p);
    curve.ray_angles.push_back(phi);
  }
  curve.points.push_back(curve.points.front());
  curve.arc_length = step * length_sum;
  curve.period = step * period_sum;
  return curve;
}

double PolylineLength(const std::vector<Vec3>& closed) {
  double total = 0.0;
  for (std::size_t i = 1; i < closed.size(); ++i) {
    const double dx = closed[i][0] - closed[i - 1][0];
    const double dy = closed[i][1] - closed[i - 1][1];
    const double dz = closed[i][2] - closed[i - 1][2];
    total += std::sqrt(dx * dx + dy * dy + dz * dz);
  }
  return total;
}

double OrbitPeriodByIntegration(double level, double dt) {
  CheckLevel(level);
  if (!(dt > 0.0)) ThrowInvalid("integration step must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  Vec3 p = BisectRay(RayDirection(0.0), level, 0).point;
  double angle = 0.0, raw = ChartAngle(p), t = 0.0;
  auto advance = [](double from_raw, const Vec3& q) {
    double d = ChartAngle(q) - from_raw;
    if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
  };
  // Orbit periods near the corners are long but finite for level >= 1e-6.
  const double max_time = 1e7;
  while (t < max_time) {
    const Vec3 next = Rk4Step(p, dt);
    const double d = advance(raw, next);
    if (angle + d >= two_pi) {
      double lo = 0.0, hi = dt;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (angle + advance(raw, Rk4Step(p, mid)) < two_pi ? lo : hi) = mid;
      }
      return t + 0.5 * (lo + hi);
    }
    angle += d;
    raw = ChartAngle(next);
    p = next;
    t += dt;
  }
  ThrowDomain("orbit did not close within the time limit");
}

double LogCircuitRatio(double level, std::size_t resolution) {
  return ExtractLevelCurve(level, resolution).period;
}

double CircuitRatio(double level, std::size_t resolution) {
  return std::exp(LogCircuitRatio(level, resolution));
}

double CircuitRatioArcLengthForm(double level, std::size_t resolution) {
  const LevelCurve c = ExtractLevelCurve(level, resolution);
  return std::exp(2.0 * c.arc_length * c.period);
}

double MeanAngularSpeed(double level, std::size_t resolution) {
  return 2.0 * std::numbers::pi / ExtractLevelCurve(level, resolution).period;
}

}  // namespace typedpa
