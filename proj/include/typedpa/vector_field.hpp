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

#ifndef TYPEDPA_VECTOR_FIELD_HPP_
#define TYPEDPA_VECTOR_FIELD_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace typedpa {

// A point (x, y, z) of the triangle x + y + z = 1, or a tangent vector.
using Vec3 = std::array<double, 3>;

inline constexpr Vec3 kCenter = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
inline constexpr double kMaxProduct = 1.0 / 27.0;
// level_curve rejects products below this (periods diverge at the corners).
inline constexpr double kMinLevel = 1e-6;

// Rock-paper-scissors drift: (x(z-y)/2, y(x-z)/2, z(y-x)/2).
Vec3 FieldEval(const Vec3& p);
double FieldNorm(const Vec3& p);

// Orthonormal chart of the plane x + y + z = 1 centered at (1/3,1/3,1/3):
// u along (1,-1,0)/sqrt(2), v along (1,1,-2)/sqrt(6). The flow turns
// counterclockwise (increasing angle) in this chart.
struct ChartPoint {
  double u = 0.0;
  double v = 0.0;
};
ChartPoint ToChart(const Vec3& p);
Vec3 FromChart(const ChartPoint& c);
// atan2(v, u) in the chart; 0 at the center.
double ChartAngle(const Vec3& p);
// dtheta/dt of the flow at p (undefined at the center, returns 0 there).
double AngularVelocity(const Vec3& p);

// Eigenvalues of the Jacobian of P at the center, restricted to the simplex
// tangent plane, by central differences in the chart.
std::array<std::complex<double>, 2> JacobianEigsCenter(double h = 1e-5);

// Classic RK4 with projection back onto x + y + z = 1 after every step.
// Returns round(T / dt) + 1 points including p0.
std::vector<Vec3> Integrate(const Vec3& p0, double duration, double dt);
Vec3 Rk4Step(const Vec3& p, double dt);

struct LevelCurve {
  double level = 0.0;                // M, the constant value of xyz
  std::vector<Vec3> points;          // closed: front() == back()
  std::vector<double> ray_angles;    // chart angle of each distinct point
  double arc_length = 0.0;           // L_M
  double period = 0.0;               // time for the flow to go round once
};

// Radial bisection along `resolution` equally spaced rays from the center.
// Arc length and period integrate sqrt(r^2 + r'^2) (and that over ||P||) in
// the ray angle with the periodic trapezoid rule, with r' from implicit
// differentiation of xyz = M.
LevelCurve ExtractLevelCurve(double level, std::size_t resolution = 512);

// Sum of chord lengths of the closed polyline.
double PolylineLength(const std::vector<Vec3>& closed);

// Period measured by integrating the flow from the curve point on ray 0 until
// the chart angle has advanced by 2*pi.
double OrbitPeriodByIntegration(double level, double dt);

// Multiplicative growth of n over one circuit, exp(T): the share process
// moves in ODE time log n.
double CircuitRatio(double level, std::size_t resolution = 512);
double LogCircuitRatio(double level, std::size_t resolution = 512);
// exp(2 L_M * integral over C_M of ds / ||P||).
double CircuitRatioArcLengthForm(double level, std::size_t resolution = 512);

// Time-averaged angular speed of the flow round C_M: 2*pi / T.
double MeanAngularSpeed(double level, std::size_t resolution = 512);

}  // namespace typedpa

#endif  // TYPEDPA_VECTOR_FIELD_HPP_
