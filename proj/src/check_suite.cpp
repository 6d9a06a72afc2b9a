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

#include "typedpa/check_suite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <ostream>

#include "json.hpp"
#include "typedpa/csv.hpp"
#include "typedpa/error.hpp"
#include "typedpa/rng.hpp"
#include "typedpa/theory.hpp"
#include "typedpa/type_rule.hpp"
#include "typedpa/vector_field.hpp"

namespace typedpa {
namespace {

constexpr int kIdentityCases = 1000;
constexpr double kIdentityTol = 1e-12;
constexpr double kTotalityTol = 1e-14;

CheckRow Compare(std::string name, std::string instance, double lhs,
                 double rhs, double tol) {
  const double err = std::abs(lhs - rhs);
  return {std::move(name), std::move(instance), lhs, rhs, err, tol,
          err <= tol};
}

std::string Join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ' ';
    s += FormatDouble(x);
  }
  return s;
}

// Flat Dirichlet draw on the simplex, bounded away from the faces so that
// the identity is exercised at interior states.
std::vector<double> RandomShares(Rng& rng, std::size_t n) {
  std::vector<double> s(n);
  for (;;) {
    double total = 0.0;
    for (auto& x : s) {
      x = -std::log1p(-rng.Uniform());
      total += x;
    }
    bool ok = true;
    for (auto& x : s) {
      x /= total;
      ok &= x > 1e-9;
    }
    if (ok) return s;
  }
}

double LogUniform(Rng& rng, double lo, double hi) {
  return lo * std::exp(rng.Uniform() * std::log(hi / lo));
}

void DriftRows(CheckReport& report, Rng& rng, double alpha) {
  const TypeRule rule = TypeRule::RockPaperScissors();
  const bool affine = alpha != 0.0;
  for (int i = 0; i < kIdentityCases; ++i) {
    const auto shares = RandomShares(rng, 3);
    const double gamma = LogUniform(rng, 6.0, 1e6);
    const double m_now = shares[0] * shares[1] * shares[2];
    const std::string inst = "shares=" + Join(shares) +
                             ";gamma=" + FormatDouble(gamma) +
                             ";alpha=" + FormatDouble(alpha);
    if (!affine) {
      CompensatedSum total;
      for (const auto& o : EnumerateStep(shares, rule)) total.Add(o.probability);
      report.rows.push_back(
          Compare("enumeration_total", inst, total.value(), 1.0, kTotalityTol));
    }
    const double lhs = ExpectedProductByEnumeration(shares, gamma, rule, alpha);
    const double rhs = affine ? ExpectedMNextAffine(m_now, gamma, alpha)
                              : ExpectedMNext(m_now, gamma);
    report.rows.push_back(Compare(affine ? "affine_identity" : "drift_identity",
                                  inst, lhs, rhs, kIdentityTol));
  }
}

void FieldRows(CheckReport& report, Rng& rng) {
  constexpr double kDuration = 100.0;
  constexpr double kDt = 0.01;
  constexpr double kConservationTol = 1e-8;
  for (int i = 0; i < 20; ++i) {
    const auto s = RandomShares(rng, 3);
    const Vec3 p0 = {s[0], s[1], s[2]};
    const auto path = Integrate(p0, kDuration, kDt);
    const double level0 = 27.0 * p0[0] * p0[1] * p0[2];
    double worst = 0.0;
    for (const Vec3& p : path) {
      worst = std::max(worst, std::abs(27.0 * p[0] * p[1] * p[2] - level0));
    }
    const Vec3& end = path.back();
    CheckRow row = Compare("conservation", "start=" + Join(s),
                           27.0 * end[0] * end[1] * end[2], level0,
                           kConservationTol);
    row.abs_err = worst;  // max deviation along the whole path
    row.pass = worst <= kConservationTol;
    report.rows.push_back(row);
  }
  const std::pair<const char*, Vec3> stationary[] = {
      {"center", kCenter},
      {"e1", {1.0, 0.0, 0.0}},
      {"e2", {0.0, 1.0, 0.0}},
      {"e3", {0.0, 0.0, 1.0}}};
  for (const auto& [name, p] : stationary) {
    report.rows.push_back(
        Compare("stationary_norm", name, FieldNorm(p), 0.0, 1e-15));
  }
  // The linearization at the center is a rotation with frequency 1/sqrt(12).
  const auto eigs = JacobianEigsCenter();
  const double omega = 1.0 / std::sqrt(12.0);
  report.rows.push_back(
      Compare("center_eig_real", "lambda+", eigs[0].real(), 0.0, 1e-8));
  report.rows.push_back(
      Compare("center_eig_imag", "lambda+", eigs[0].imag(), omega, 1e-8));
  report.rows.push_back(
      Compare("center_eig_real", "lambda-", eigs[1].real(), 0.0, 1e-8));
  report.rows.push_back(
      Compare("center_eig_imag", "lambda-", eigs[1].imag(), -omega, 1e-8));
}

void LemmaRows(CheckReport& report) {
  constexpr double kGrid = 0.02;
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (std::uint32_t m = 1; m <= 4; ++m) {
      for (std::uint32_t k = 2; k <= 4; ++k) {
        const auto r = VerifyUniformMax(n, m, k, kGrid);
        CheckRow row;
        row.check_name = std::string("lemma_") + OutcomeName(r.outcome);
        row.instance = "n=" + std::to_string(n) + ";m=" + std::to_string(m) +
                       ";k=" + std::to_string(k);
        // lhs: p at uniform; rhs: the best non-uniform grid value (or the
        // claimed constant); abs_err: the margin.
        row.lhs = r.uniform_value;
        const bool degenerate = std::min(n, m) < k;
        row.rhs = degenerate ? (r.outcome ==
                                        UniformMaxReport::Outcome::kIdenticallyOne
                                    ? 1.0
                                    : 0.0)
                             : r.uniform_value - r.margin;
        row.abs_err = degenerate ? std::abs(r.uniform_value - row.rhs)
                                 : r.margin;
        row.tolerance = 0.0;
        row.pass = degenerate
                       ? r.outcome == UniformMaxReport::Outcome::kIdenticallyZero
                       : r.outcome ==
                             UniformMaxReport::Outcome::kUniformStrictMax;
        report.rows.push_back(row);
      }
    }
  }
}

// Brute-force occupancy law for small (k, t).
std::vector<double> OccupancyByEnumeration(std::uint32_t k, std::uint32_t t) {
  std::vector<std::uint64_t> hits(std::min(k, t) + 1, 0);
  std::uint64_t outcomes = 0;
  std::vector<std::uint32_t> draw(k, 0);
  std::vector<bool> seen(t);
  for (;;) {
    std::fill(seen.begin(), seen.end(), false);
    std::uint32_t distinct = 0;
    for (auto d : draw) {
      if (!seen[d]) ++distinct;
      seen[d] = true;
    }
    ++hits[distinct];
    ++outcomes;
    std::size_t i = 0;
    while (i < k && ++draw[i] == t) draw[i++] = 0;
    if (i == k) break;
  }
  std::vector<double> pmf(hits.size());
  for (std::size_t j = 0; j < hits.size(); ++j) {
    pmf[j] = static_cast<double>(hits[j]) / static_cast<double>(outcomes);
  }
  return pmf;
}

void VisibleRows(CheckReport& report) {
  for (std::uint32_t t = 1; t <= 10; ++t) {
    for (std::uint32_t k = 1; k <= 12; ++k) {
      if (std::pow(double(t), double(k)) > 1e6) break;
      const auto law = Occupancy(k, t);
      const auto brute = OccupancyByEnumeration(k, t);
      double worst = 0.0;
      for (std::size_t j = 0; j < brute.size(); ++j) {
        worst = std::max(worst, std::abs(law.pmf[j] - brute[j]));
      }
      CheckRow row = Compare("occupancy_pmf",
                             "k=" + std::to_string(k) + ";t=" + std::to_string(t),
                             worst, 0.0, 1e-12);
      report.rows.push_back(row);
    }
  }
  constexpr int kGridPoints = 200;
  for (std::uint32_t n = 2; n <= 5; ++n) {
    for (std::uint32_t m = 3; m <= 6; ++m) {
      const double lo = 0.01;
      const double hi = 1.0 / n - 0.01;
      double min_f = std::numeric_limits<double>::infinity();
      double arg = lo;
      for (int i = 0; i <= kGridPoints; ++i) {
        const double y = lo + (hi - lo) * i / kGridPoints;
        const double f = DriftF(y, n, m);
        if (f < min_f) {
          min_f = f;
          arg = y;
        }
      }
      // lhs: min f over the grid; rhs: the argmin y.
      report.rows.push_back({"drift_positive",
                             "N=" + std::to_string(n) + ";m=" + std::to_string(m),
                             min_f, arg, 0.0, 0.0, min_f > 0.0});
    }
  }
}

}  // namespace

bool CheckReport::pass() const { return failures() == 0 && !rows.empty(); }

std::size_t CheckReport::failures() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const CheckRow& r) { return !r.pass; });
}

void CheckReport::WriteJson(std::ostream& out) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["pass"] = pass();
  j["checks"] = rows.size();
  j["failures"] = failures();
  auto list = nlohmann::json::array();
  for (const auto& r : rows) {
    list.push_back({{"check_name", r.check_name},
                    {"instance", r.instance},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"abs_err", r.abs_err},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  }
  j["rows"] = std::move(list);
  out << j.dump(2) << '\n';
}

void CheckReport::WriteCsv(std::ostream& out) const {
  out << "check_name,instance,lhs,rhs,abs_err\n";
  for (const auto& r : rows) {
    out << r.check_name << ',' << r.instance << ',' << FormatDouble(r.lhs)
        << ',' << FormatDouble(r.rhs) << ',' << FormatDouble(r.abs_err)
        << '\n';
  }
}

std::vector<std::string> CheckSuites() {
  return {"drift_identities", "affine", "field_conservation", "lemma_max",
          "visible_type"};
}

CheckReport RunCheckSuite(std::string_view name, std::uint64_t seed) {
  CheckReport report;
  report.suite = std::string(name);
  Rng rng(seed);
  if (name == "drift_identities") {
    DriftRows(report, rng, 0.0);
  } else if (name == "affine") {
    for (double alpha : {-1.0, -0.5, 0.5, 1.0, 2.0}) {
      DriftRows(report, rng, alpha);
    }
  } else if (name == "field_conservation") {
    FieldRows(report, rng);
  } else if (name == "lemma_max") {
    LemmaRows(report);
  } else if (name == "visible_type") {
    VisibleRows(report);
  } else {
    ThrowInvalid("unknown check suite '" + std::string(name) + "'");
  }
  return report;
}

}  // namespace typedpa
