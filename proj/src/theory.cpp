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

#include "typedpa/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "typedpa/error.hpp"

namespace typedpa {
namespace {

constexpr double kEnumerationLimit = 1e7;

double Factorial(std::uint32_t n) {
  double f = 1.0;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

double Multinomial(const CountVector& u) {
  std::uint32_t total = 0;
  double denom = 1.0;
  for (auto c : u) {
    total += c;
    denom *= Factorial(c);
  }
  return Factorial(total) / denom;
}

double Binomial(std::uint32_t n, std::uint32_t k) {
  double b = 1.0;
  for (std::uint32_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Degenerate cases where p_nmk is identically 0 or 1 for every p with full
// support; returns -1 otherwise.
double DegenerateDistinct(std::size_t n, std::uint32_t m, std::uint32_t k) {
  if (k == 0) return 1.0;
  if (std::min<std::size_t>(n, m) < k) return 0.0;
  if (k == 1) return 1.0;
  return -1.0;
}

void CheckDistribution(std::span<const double> p) {
  if (p.empty()) ThrowInvalid("p_nmk needs a distribution on n >= 1 elements");
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) ThrowInvalid("p_nmk: negative probability");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-9) ThrowInvalid("p_nmk: p does not sum to 1");
}

}  // namespace

void CompensatedSum::Add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    correction_ += (sum_ - t) + v;
  } else {
    correction_ += (v - t) + sum_;
  }
  sum_ = t;
}

std::vector<StepOutcome> EnumerateStep(std::span<const double> shares,
                                       const TypeRule& rule) {
  const std::size_t n = rule.num_types();
  if (shares.size() != n) {
    ThrowInvalid("shares have " + std::to_string(shares.size()) +
                 " entries, rule has N=" + std::to_string(n));
  }
  std::vector<StepOutcome> out;
  for (const CountVector& u : Compositions(rule.m(), n)) {
    double prob = Multinomial(u);
    for (std::size_t i = 0; i < n; ++i) prob *= std::pow(shares[i], u[i]);
    if (prob == 0.0) continue;
    const std::vector<double> p = rule.AssignDistribution(u);
    for (std::size_t t = 0; t < n; ++t) {
      if (p[t] <= 0.0) continue;
      StepOutcome o;
      o.probability = prob * p[t];
      o.neighbor_counts = u;
      o.delta_type_edge_ends.assign(u.begin(), u.end());
      o.delta_type_edge_ends[t] += rule.m();
      o.new_vertex_type = static_cast<TypeIndex>(t);
      out.push_back(std::move(o));
    }
  }
  return out;
}

double ExpectedProductByEnumeration(std::span<const double> shares,
                                    double gamma, const TypeRule& rule,
                                    double alpha) {
  const double gamma_next = gamma + 2.0 * rule.m() + alpha;
  CompensatedSum sum;
  for (const StepOutcome& o : EnumerateStep(shares, rule)) {
    double prod = o.probability;
    for (std::size_t t = 0; t < shares.size(); ++t) {
      double w = shares[t] * gamma + static_cast<double>(o.delta_type_edge_ends[t]);
      if (t == o.new_vertex_type) w += alpha;
      prod *= w / gamma_next;
    }
    sum.Add(prod);
  }
  return sum.value();
}

double ExpectedMNext(double m_now, double gamma) {
  const double g = gamma + 4.0;
  return m_now * (1.0 - 30.0 / (g * g) + 56.0 / (g * g * g));
}

double ExpectedMNextAffine(double m_now, double gamma, double alpha) {
  // Same value algebraically; this keeps alpha = 0 bit-identical.
  if (alpha == 0.0) return ExpectedMNext(m_now, gamma);
  const double g = gamma + 4.0 + alpha;
  const double g3 = g * g * g;
  const double lin = 30.0 + 18.0 * alpha + 3.0 * alpha * alpha;
  const double c = 4.0 + alpha;
  return m_now * (1.0 - lin * gamma / g3 - c * c * c / g3);
}

double OccupancyLaw::ExpectedInverseSuccessor() const {
  CompensatedSum s;
  for (std::size_t j = 0; j < pmf.size(); ++j) s.Add(pmf[j] / (j + 1.0));
  return s.value();
}

long double StirlingSecond(std::uint32_t k, std::uint32_t j) {
  if (j > k) return 0.0L;
  // Row-by-row recurrence S(i, l) = l S(i-1, l) + S(i-1, l-1).
  std::vector<long double> row(j + 1, 0.0L);
  row[0] = 1.0L;
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t l = std::min(i, j); l >= 1; --l) {
      row[l] = l * row[l] + row[l - 1];
    }
    row[0] = 0.0L;
  }
  return row[j];
}

OccupancyLaw Occupancy(std::uint32_t k, std::uint32_t t) {
  if (t < 1) ThrowInvalid("occupancy needs t >= 1");
  OccupancyLaw law;
  law.k = k;
  law.t = t;
  const std::uint32_t top = std::min(k, t);
  law.pmf.assign(top + 1, 0.0);
  if (k == 0) {
    law.pmf[0] = 1.0;
    return law;
  }
  const long double tk = std::pow(static_cast<long double>(t), k);
  long double falling = 1.0L;  // t! / (t - j)!
  for (std::uint32_t j = 1; j <= top; ++j) {
    falling *= static_cast<long double>(t - j + 1);
    law.pmf[j] = static_cast<double>(StirlingSecond(k, j) * falling / tk);
  }
  return law;
}

double DriftF(double y, std::uint32_t num_types, std::uint32_t m) {
  if (num_types < 2) ThrowInvalid("drift f needs N >= 2");
  if (m < 1) ThrowInvalid("drift f needs m >= 1");
  if (!(y >= 0.0 && y <= 1.0)) ThrowInvalid("drift f needs 0 <= y <= 1");
  CompensatedSum s;
  for (std::uint32_t k = 0; k < m; ++k) {
    const double inv = Occupancy(k, num_types - 1).ExpectedInverseSuccessor();
    s.Add(Binomial(m, k) * std::pow(1.0 - y, k) * std::pow(y, m - k) * inv);
  }
  s.Add(-y);
  return s.value();
}

double PNmkEnumerate(std::span<const double> p, std::uint32_t m,
                     std::uint32_t k) {
  CheckDistribution(p);
  const std::size_t n = p.size();
  if (n > 64 || std::pow(static_cast<double>(n), m) > kEnumerationLimit) {
    ThrowInvalid("p_nmk enumeration infeasible: n^m > 1e7");
  }
  std::vector<std::uint32_t> draw(m, 0);
  CompensatedSum total;
  for (;;) {
    double prob = 1.0;
    std::uint64_t seen = 0;
    for (auto d : draw) {
      prob *= p[d];
      seen |= std::uint64_t{1} << d;
    }
    if (static_cast<std::uint32_t>(std::popcount(seen)) >= k) total.Add(prob);
    std::size_t pos = 0;
    while (pos < m && ++draw[pos] == n) draw[pos++] = 0;
    if (pos == m) break;
  }
  return total.value();
}

double PNmkDynamic(std::span<const double> p, std::uint32_t m,
                   std::uint32_t k) {
  CheckDistribution(p);
  const std::size_t n = p.size();
  const std::size_t dmax = std::min<std::size_t>(n, m);
  if (static_cast<double>(n) * m * m * dmax > 1e10) {
    ThrowInvalid("p_nmk dynamic program infeasible for these sizes");
  }
  // w[j][d]: sum over count assignments to the elements seen so far using j
  // draws with d nonzero counts of prod p_i^c_i / c_i!.
  std::vector<std::vector<double>> w(m + 1, std::vector<double>(dmax + 1, 0.0));
  w[0][0] = 1.0;
  std::vector<double> term(m + 1);
  for (std::size_t i = 0; i < n; ++i) {
    term[0] = 1.0;
    for (std::uint32_t c = 1; c <= m; ++c) term[c] = term[c - 1] * p[i] / c;
    auto next = w;
    for (std::uint32_t j = 0; j <= m; ++j) {
      for (std::size_t d = 0; d <= dmax; ++d) {
        if (w[j][d] == 0.0) continue;
        for (std::uint32_t c = 1; j + c <= m && d + 1 <= dmax; ++c) {
          next[j + c][d + 1] += w[j][d] * term[c];
        }
      }
    }
    w = std::move(next);
  }
  CompensatedSum s;
  for (std::size_t d = k; d <= dmax; ++d) s.Add(w[m][d]);
  return Factorial(m) * s.value();
}

double PNmk(std::span<const double> p, std::uint32_t m, std::uint32_t k) {
  CheckDistribution(p);
  const double degenerate = DegenerateDistinct(p.size(), m, k);
  if (degenerate >= 0.0) {
    // k == 1 needs a draw to land somewhere, which it always does.
    return degenerate;
  }
  if (p.size() <= 64 &&
      std::pow(static_cast<double>(p.size()), m) <= kEnumerationLimit) {
    return PNmkEnumerate(p, m, k);
  }
  return PNmkDynamic(p, m, k);
}

const char* OutcomeName(UniformMaxReport::Outcome outcome) {
  switch (outcome) {
    case UniformMaxReport::Outcome::kUniformStrictMax:
      return "uniform_strict_max";
    case UniformMaxReport::Outcome::kIdenticallyZero:
      return "identically_zero";
    case UniformMaxReport::Outcome::kIdenticallyOne:
      return "identically_one";
    case UniformMaxReport::Outcome::kViolated:
      return "violated";
  }
  return "?";
}

UniformMaxReport VerifyUniformMax(std::uint32_t n, std::uint32_t m,
                                  std::uint32_t k, double grid_step) {
  if (n < 1) ThrowInvalid("lemma check needs n >= 1");
  if (!(grid_step > 0.0 && grid_step <= 1.0)) {
    ThrowInvalid("grid step must lie in (0, 1]");
  }
  const double parts = 1.0 / grid_step;
  const auto g = static_cast<std::uint32_t>(std::llround(parts));
  if (std::abs(parts - g) > 1e-9) {
    ThrowInvalid("grid step must divide 1 evenly");
  }
  UniformMaxReport report;
  report.n = n;
  report.m = m;
  report.k = k;
  report.grid_step = grid_step;
  const std::vector<double> uniform(n, 1.0 / n);
  report.uniform_value = PNmk(uniform, m, k);

  const double degenerate = DegenerateDistinct(n, m, k);
  bool all_equal = true;
  double margin = std::numeric_limits<double>::infinity();
  std::vector<double> p(n);
  for (const CountVector& c : Compositions(g, n)) {
    ++report.grid_points;
    bool is_uniform = true;
    for (std::uint32_t i = 0; i < n; ++i) {
      p[i] = static_cast<double>(c[i]) / g;
      is_uniform &= c[i] * n == g;
    }
    if (degenerate >= 0.0) {
      // Confirm the shortcut against the unshortcut computation.
      const double raw = std::pow(static_cast<double>(n), m) <= kEnumerationLimit
                             ? PNmkEnumerate(p, m, k)
                             : PNmkDynamic(p, m, k);
      all_equal &= std::abs(raw - degenerate) <= 1e-12 &&
                   PNmk(p, m, k) == degenerate;
      continue;
    }
    const double value = PNmk(p, m, k);
    if (is_uniform) continue;
    const double gap = report.uniform_value - value;
    if (gap < margin) {
      margin = gap;
      report.worst_point = p;
    }
  }
  if (degenerate >= 0.0) {
    report.margin = 0.0;
    report.outcome = !all_equal ? UniformMaxReport::Outcome::kViolated
                     : degenerate == 0.0
                         ? UniformMaxReport::Outcome::kIdenticallyZero
                         : UniformMaxReport::Outcome::kIdenticallyOne;
    return report;
  }
  report.margin = margin;
  report.outcome = margin > 0.0 ? UniformMaxReport::Outcome::kUniformStrictMax
                                : UniformMaxReport::Outcome::kViolated;
  return report;
}

}  // namespace typedpa
