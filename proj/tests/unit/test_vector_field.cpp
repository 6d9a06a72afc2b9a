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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "typedpa/error.hpp"
#include "typedpa/rng.hpp"
#include "typedpa/vector_field.hpp"

using namespace typedpa;

namespace {

// Angular frequency of the linearized flow at the center. The chart
// Jacobian there is (1/12) [[0, -sqrt3], [sqrt3, 0]].
const double kOmega = 1.0 / std::sqrt(12.0);
const double kLinearPeriod = 2.0 * std::numbers::pi * std::sqrt(12.0);

Vec3 RandomSimplex(Rng& rng) {
  double a = -std::log1p(-rng.Uniform());
  double b = -std::log1p(-rng.Uniform());
  double c = -std::log1p(-rng.Uniform());
  const double s = a + b + c;
  return {a / s, b / s, c / s};
}

double Product27(const Vec3& p) { return 27.0 * p[0] * p[1] * p[2]; }

}  // namespace

TEST_CASE("field values") {
  const Vec3 zero = FieldEval(kCenter);
  for (double c : zero) CHECK(std::abs(c) <= 1e-17);
  const Vec3 corner = FieldEval({1.0, 0.0, 0.0});
  for (double c : corner) CHECK(c == 0.0);
  const Vec3 p = FieldEval({0.5, 0.25, 0.25});
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(-1.0 / 32.0).epsilon(1e-15));
  CHECK(FieldNorm(kCenter) <= 1e-17);
  CHECK(FieldNorm({0.5, 0.25, 0.25}) ==
        doctest::Approx(std::sqrt(2.0) / 32.0).epsilon(1e-15));
}

TEST_CASE("field is tangent to the simplex") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const Vec3 f = FieldEval(RandomSimplex(rng));
    CHECK(std::abs(f[0] + f[1] + f[2]) <= 1e-15);
  }
}

TEST_CASE("field norm bounded away from zero off the center and corners") {
  Rng rng(4);
  for (double delta : {0.01, 0.03, 0.05, 0.1}) {
    int tested = 0;
    while (tested < 2000) {
      const Vec3 p = RandomSimplex(rng);
      const double mn = std::min({p[0], p[1], p[2]});
      if (!(mn > delta && mn < 1.0 / 3.0 - 2.0 * delta)) continue;
      ++tested;
      CHECK(FieldNorm(p) >= delta / 6.0);
    }
  }
}

TEST_CASE("chart round trip and orientation") {
  const Vec3 p = {0.5, 0.25, 0.25};
  const Vec3 q = FromChart(ToChart(p));
  for (int i = 0; i < 3; ++i) CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-15));
  // The flow turns counterclockwise in the chart.
  CHECK(AngularVelocity(p) > 0.0);
}

TEST_CASE("center eigenvalues") {
  const auto e = JacobianEigsCenter();
  CHECK(std::abs(e[0].real()) <= 1e-8);
  CHECK(std::abs(e[1].real()) <= 1e-8);
  CHECK(std::abs(e[0].imag() - kOmega) <= 1e-8);
  CHECK(std::abs(e[1].imag() + kOmega) <= 1e-8);
  CHECK(2.0 * std::numbers::pi / e[0].imag() ==
        doctest::Approx(kLinearPeriod).epsilon(1e-8));
  CHECK(kLinearPeriod == doctest::Approx(21.765592).epsilon(1e-7));
}

TEST_CASE("integration") {
  const auto still = Integrate(kCenter, 10.0, 0.01);
  for (const Vec3& p : still) {
    for (int i = 0; i < 3; ++i) CHECK(p[i] == kCenter[i]);
  }
  CHECK(still.size() == 1001);

  const Vec3 p0 = {0.5, 0.25, 0.25};
  const auto path = Integrate(p0, 100.0, 0.01);
  CHECK(Product27(p0) == doctest::Approx(27.0 / 32.0));
  double worst = 0.0;
  for (const Vec3& p : path) {
    worst = std::max(worst, std::abs(Product27(p) - 27.0 / 32.0));
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) <= 1e-14);
  }
  CHECK(worst <= 1e-8);

  // Small orbits close after one linearized period.
  const Vec3 near = FromChart({1e-3, 0.0});
  const double dt = kLinearPeriod / 4000.0;
  const auto loop = Integrate(near, kLinearPeriod, dt);
  const Vec3& back = loop.back();
  const double dist = std::hypot(back[0] - near[0], back[1] - near[1],
                                 back[2] - near[2]);
  CHECK(dist <= 1e-4);
}

TEST_CASE("level curves") {
  for (double level27 : {0.1, 0.3, 0.5, 0.9}) {
    CAPTURE(level27);
    const LevelCurve c = ExtractLevelCurve(level27 / 27.0, 512);
    CHECK(c.points.size() == 513);
    CHECK(c.points.front() == c.points.back());
    double worst = 0.0;
    for (const Vec3& p : c.points) {
      worst = std::max(worst, std::abs(p[0] * p[1] * p[2] - c.level));
    }
    CHECK(worst <= 1e-10);
    // The chord sum converges to the spectral arc length.
    CHECK(PolylineLength(c.points) ==
          doctest::Approx(c.arc_length).epsilon(1e-4));
  }
  // Near the center the loop is small and the period is the linear one.
  const LevelCurve small = ExtractLevelCurve(0.963 / 27.0);
  CHECK(std::abs(small.period / kLinearPeriod - 1.0) <= 0.02);
  const LevelCurve tiny = ExtractLevelCurve((1.0 - 1e-9) / 27.0);
  CHECK(tiny.arc_length < 1e-3);
  CHECK(tiny.period == doctest::Approx(kLinearPeriod).epsilon(1e-6));

  CHECK_THROWS_AS(ExtractLevelCurve(0.0), Error);
  CHECK_THROWS_AS(ExtractLevelCurve(1.0 / 27.0), Error);
  CHECK_THROWS_AS(ExtractLevelCurve(0.5e-6), Error);
  CHECK_THROWS_AS(ExtractLevelCurve(0.05), Error);
}

TEST_CASE("period and arc length converge") {
  for (double level27 : {0.1, 0.3, 0.6, 0.9}) {
    CAPTURE(level27);
    const double level = level27 / 27.0;
    const LevelCurve a = ExtractLevelCurve(level, 512);
    const LevelCurve b = ExtractLevelCurve(level, 1024);
    CHECK(std::abs(b.arc_length / a.arc_length - 1.0) <= 1e-6);
    CHECK(std::abs(b.period / a.period - 1.0) <= 1e-6);
    // Independent route: time one revolution of the RK4 flow.
    const double t1 = OrbitPeriodByIntegration(level, 0.01);
    const double t2 = OrbitPeriodByIntegration(level, 0.005);
    CHECK(std::abs(t2 / t1 - 1.0) <= 1e-6);
    CHECK(std::abs(t2 / a.period - 1.0) <= 1e-6);
    CHECK(MeanAngularSpeed(level) ==
          doctest::Approx(2.0 * std::numbers::pi / a.period));
  }
}

TEST_CASE("circuit ratio") {
  for (double level27 : {0.05, 0.2, 0.5, 0.8, 0.99}) {
    const double level = level27 / 27.0;
    CHECK(CircuitRatio(level) > 1.0);
    CHECK(LogCircuitRatio(level) == doctest::Approx(ExtractLevelCurve(level).period));
    const double a = LogCircuitRatio(level, 512);
    const double b = LogCircuitRatio(level, 1024);
    // Relative change of A = exp(T) is |exp(b - a) - 1|.
    CHECK(std::abs(std::expm1(b - a)) <= 1e-6);
    CHECK(CircuitRatioArcLengthForm(level) > 1.0);
  }
  CHECK(LogCircuitRatio((1.0 - 1e-9) / 27.0) ==
        doctest::Approx(kLinearPeriod).epsilon(1e-6));
}

TEST_CASE("loops with 27M <= 0.5 reach past 0.4 and below 0.25") {
  for (double level27 : {0.1, 0.3, 0.5}) {
    const LevelCurve c = ExtractLevelCurve(level27 / 27.0);
    for (int i = 0; i < 3; ++i) {
      double lo = 1.0, hi = 0.0;
      for (const Vec3& p : c.points) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
      }
      CHECK(hi > 0.4);
      CHECK(lo < 0.25);
    }
  }
}
