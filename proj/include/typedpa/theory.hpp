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

#ifndef TYPEDPA_THEORY_HPP_
#define TYPEDPA_THEORY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "typedpa/type_rule.hpp"

namespace typedpa {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double v);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

// One way a single growth step can go: the sampled neighbor multiset u and
// the type the new vertex adopts.
struct StepOutcome {
  double probability = 0.0;
  CountVector neighbor_counts;
  // Edge ends gained per type: u plus m for the new vertex's type.
  std::vector<std::int64_t> delta_type_edge_ends;
  TypeIndex new_vertex_type = 0;
};

// All outcomes of positive probability given the current attachment shares.
std::vector<StepOutcome> EnumerateStep(std::span<const double> shares,
                                       const TypeRule& rule);

// E[product of next-step shares] by full enumeration, where `shares` are
// attachment weights over gamma and alpha is the affine offset.
double ExpectedProductByEnumeration(std::span<const double> shares,
                                    double gamma, const TypeRule& rule,
                                    double alpha = 0.0);

// Closed forms for E[M_{n+1} | F_n] in the rock-paper-scissors model.
double ExpectedMNext(double m_now, double gamma);
double ExpectedMNextAffine(double m_now, double gamma, double alpha);

// Distinct-value count Z(k) of k iid uniform draws from t values.
struct OccupancyLaw {
  std::uint32_t k = 0;
  std::uint32_t t = 0;
  std::vector<double> pmf;  // pmf[j] = P(Z = j), j = 0..min(k, t)

  double ExpectedInverseSuccessor() const;  // E[1 / (Z + 1)]
};

// Stirling numbers of the second kind, S(k, j).
long double StirlingSecond(std::uint32_t k, std::uint32_t j);

// pmf(j) = S(k, j) * t! / (t - j)! / t^k.
OccupancyLaw Occupancy(std::uint32_t k, std::uint32_t t);

// Drift of the two-type comparison process for the visible-type rule with
// N types and m neighbors; occupancy over the t = N - 1 other types.
double DriftF(double y, std::uint32_t num_types, std::uint32_t m);

// Probability that m iid draws from p (on n = p.size() elements) contain at
// least k distinct elements.
double PNmk(std::span<const double> p, std::uint32_t m, std::uint32_t k);
double PNmkEnumerate(std::span<const double> p, std::uint32_t m,
                     std::uint32_t k);
double PNmkDynamic(std::span<const double> p, std::uint32_t m,
                   std::uint32_t k);

struct UniformMaxReport {
  enum class Outcome {
    kUniformStrictMax,
    kIdenticallyZero,
    kIdenticallyOne,
    kViolated,
  };
  std::uint32_t n = 0, m = 0, k = 0;
  double grid_step = 0.0;
  Outcome outcome = Outcome::kViolated;
  double uniform_value = 0.0;
  // min over non-uniform grid points of p_nmk(uniform) - p_nmk(p).
  double margin = 0.0;
  std::size_t grid_points = 0;
  std::vector<double> worst_point;
};

const char* OutcomeName(UniformMaxReport::Outcome outcome);

UniformMaxReport VerifyUniformMax(std::uint32_t n, std::uint32_t m,
                                  std::uint32_t k, double grid_step);

}  // namespace typedpa

#endif  // TYPEDPA_THEORY_HPP_
