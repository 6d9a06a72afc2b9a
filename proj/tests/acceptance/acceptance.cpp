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

// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   acceptance                 run every criterion
//   acceptance NAME [NAME...]  run the named ones
//   acceptance --list          print the names

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "typedpa/check_suite.hpp"
#include "typedpa/graph_state.hpp"
#include "typedpa/observables.hpp"
#include "typedpa/simulation.hpp"
#include "typedpa/theory.hpp"
#include "typedpa/type_rule.hpp"
#include "typedpa/vector_field.hpp"

using namespace typedpa;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double MaxErr(const CheckReport& r) {
  double worst = 0.0;
  for (const auto& row : r.rows) worst = std::max(worst, row.abs_err);
  return worst;
}

Verdict DriftIdentity() {
  const auto r = RunCheckSuite("drift_identities");
  return {r.pass(), Fmt("%zu checks, max |lhs-rhs| = %.3g (tol 1e-12)",
                        r.rows.size(), MaxErr(r))};
}

Verdict AffineIdentity() {
  const auto r = RunCheckSuite("affine");
  return {r.pass(), Fmt("%zu checks over alpha in {-1,-0.5,0.5,1,2}, "
                        "max |lhs-rhs| = %.3g (tol 1e-12)",
                        r.rows.size(), MaxErr(r))};
}

Verdict Conservation() {
  const auto r = RunCheckSuite("field_conservation");
  double worst = 0.0;
  bool pass = true;
  std::size_t starts = 0;
  for (const auto& row : r.rows) {
    if (row.check_name != "conservation") continue;
    ++starts;
    worst = std::max(worst, row.abs_err);
    pass &= row.pass;
  }
  return {pass && starts == 20,
          Fmt("%zu RK4 paths, T=100, dt=0.01: max |d(27xyz)| = %.3g (tol 1e-8)",
              starts, worst)};
}

Verdict EllipticCenter() {
  const auto e = JacobianEigsCenter();
  const double claimed = 1.0 / std::sqrt(27.0);
  const double re_err = std::max(std::abs(e[0].real()), std::abs(e[1].real()));
  const double im_err = std::max(std::abs(e[0].imag() - claimed),
                                 std::abs(e[1].imag() + claimed));
  double norm = 0.0;
  for (const Vec3& p : {kCenter, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
    norm = std::max(norm, FieldNorm(p));
  }
  const bool pass = re_err <= 1e-8 && im_err <= 1e-8 && norm <= 1e-15;
  return {pass, Fmt("eigenvalues %.12g%+.12gi, %.12g%+.12gi vs +-i/sqrt(27) = "
                    "+-%.12gi: |err| = %.3g (tol 1e-8); max stationary |P| = "
                    "%.3g (tol 1e-15)",
                    e[0].real(), e[0].imag(), e[1].real(), e[1].imag(),
                    claimed, std::max(re_err, im_err), norm)};
}

Verdict MConvergenceSupport() {
  RunSpec spec;
  spec.start = NamedStartGraph("k3");
  spec.n_max = 10000;
  std::size_t inside = 0, below = 0, above = 0;
  constexpr std::size_t kSeeds = 200;
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    auto rng = Rng::ForStream(1, seed);
    const double m27 = 27.0 * SimulateRun(spec, rng).summary.final_product;
    inside += m27 > 0.0 && m27 < 1.0;
    below += m27 < 0.5;
    above += m27 > 0.5;
    lo = std::min(lo, m27);
    hi = std::max(hi, m27);
  }
  const bool pass = inside == kSeeds && below * 10 >= kSeeds &&
                    above * 10 >= kSeeds;
  return {pass, Fmt("200 seeds, n=1e4: %zu in (0,1), range [%.4f, %.4f], "
                    "%zu below 0.5, %zu above 0.5 (need >= 20 each)",
                    inside, lo, hi, below, above)};
}

// The single long run shared by the two circling criteria.
const RunResult& LongRun() {
  static const RunResult result = [] {
    RunSpec spec;
    spec.start = NamedStartGraph("k3");
    spec.n_max = 10'000'000;
    auto rng = Rng::ForStream(1, 0);
    return SimulateRun(spec, rng);
  }();
  return result;
}

Verdict NonConvergence() {
  const auto& run = LongRun();
  const auto& records = run.records;
  const double m_range = ProductRange(records, 1'000'000, 10'000'000);
  const auto coords = CoordinateRanges(records, 1'000'000, 10'000'000);
  const double normalized = 27.0 * m_range;
  bool coords_ok = true;
  for (double c : coords) coords_ok &= c >= 5.0 * normalized;
  // Winding per decade from 1e3 to 1e7, all of one sign.
  std::vector<double> decades;
  for (std::uint64_t n = 1000; n < 10'000'000; n *= 10) {
    decades.push_back(ThetaAt(records, n * 10) - ThetaAt(records, n));
  }
  const double total = ThetaAt(records, 10'000'000) - ThetaAt(records, 1000);
  const bool same_sign =
      std::all_of(decades.begin(), decades.end(),
                  [&](double d) { return d * total > 0.0; });
  const bool pass = m_range <= 0.05 / 27.0 && coords_ok &&
                    std::abs(total) >= 0.5 && same_sign &&
                    run.summary.theta_flags == 0;
  return {pass,
          Fmt("n in [1e6,1e7]: M-range = %.3g (27M-range %.3g, tol 0.05); "
              "coordinate ranges %.4f %.4f %.4f (need >= %.4f); "
              "dtheta[1e3,1e7] = %.4f rad, decades %+.3f %+.3f %+.3f %+.3f; "
              "theta flags %zu",
              m_range, normalized, coords[0], coords[1], coords[2],
              5.0 * normalized, total, decades[0], decades[1], decades[2],
              decades[3], run.summary.theta_flags)};
}

Verdict CirclingRate() {
  const auto& run = LongRun();
  const double dtheta =
      ThetaAt(run.records, 10'000'000) - ThetaAt(run.records, 10'000);
  const double measured = dtheta / std::log(1000.0);
  const double m_final = run.summary.final_product;
  const double predicted = MeanAngularSpeed(m_final);
  const double rel = std::abs(measured / predicted - 1.0);
  return {rel <= 0.25,
          Fmt("27M_final = %.4f: measured dtheta/dlog n over [1e4,1e7] = %.4f, "
              "ODE mean angular speed on C_M = %.4f (period %.4f), rel err "
              "%.3f (tol 0.25)",
              27.0 * m_final, measured, predicted,
              2.0 * std::numbers::pi / predicted, rel)};
}

Verdict VisibleType() {
  RunSpec spec;
  spec.start = NamedStartGraph("k3");
  spec.rule = TypeRule::UniformVisible(3, 3);
  spec.n_max = 1'000'000;
  spec.checkpoint_ratio = 1.5;
  constexpr std::size_t kSeeds = 50;
  std::size_t close = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    auto rng = Rng::ForStream(1, seed);
    const auto run = SimulateRun(spec, rng);
    double dev = 0.0;
    for (double s : run.records.back().shares) {
      dev = std::max(dev, std::abs(s - 1.0 / 3.0));
    }
    worst = std::max(worst, dev);
    close += dev <= 0.02;
  }
  const auto drift = RunCheckSuite("visible_type");
  double min_f = 1.0;
  bool drift_ok = true;
  for (const auto& row : drift.rows) {
    if (row.check_name != "drift_positive") continue;
    min_f = std::min(min_f, row.lhs);
    drift_ok &= row.pass;
  }
  const bool pass = close * 100 >= 95 * kSeeds && drift_ok;
  return {pass, Fmt("N=3, m=3, n=1e6: %zu/50 seeds with all shares within "
                    "0.02 of 1/3 (need >= 95%%), worst deviation %.4f; "
                    "min f on grid = %.3g (N=2..5, m=3..6)",
                    close, worst, min_f)};
}

Verdict LemmaBruteForce() {
  const auto r = RunCheckSuite("lemma_max");
  std::size_t strict = 0, zero = 0;
  double margin = 1.0;
  for (const auto& row : r.rows) {
    if (row.check_name == "lemma_uniform_strict_max") {
      ++strict;
      margin = std::min(margin, row.abs_err);
    }
    zero += row.check_name == "lemma_identically_zero";
  }
  return {r.pass(), Fmt("n,m in 1..4, k in 2..4, grid 0.02: %zu strict maxima "
                        "(smallest margin %.3g), %zu identically zero, "
                        "%zu failures",
                        strict, margin, zero, r.failures())};
}

Verdict MTwoReduction() {
  std::size_t compared = 0, mismatched = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto vis = TypeRule::UniformVisible(n, 2);
    const auto lin = TypeRule::Linear(n, 2);
    for (const auto& u : Compositions(2, n)) {
      ++compared;
      mismatched += vis.AssignDistribution(u) != lin.AssignDistribution(u);
    }
  }
  return {mismatched == 0, Fmt("%zu count vectors (N=2..5, m=2), %zu differ",
                               compared, mismatched)};
}

struct Criterion {
  const char* name;
  const char* title;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> all = {
      {"drift_identity", "Drift identity", DriftIdentity},
      {"affine_identity", "Affine drift identity", AffineIdentity},
      {"conservation", "Conservation", Conservation},
      {"elliptic_center", "Elliptic center", EllipticCenter},
      {"m_convergence_support", "M convergence with full-support limit",
       MConvergenceSupport},
      {"non_convergence", "Non-convergence of shares", NonConvergence},
      {"circling_rate", "Circling rate consistency", CirclingRate},
      {"visible_type", "Visible-type convergence", VisibleType},
      {"lemma_brute_force", "Lemma brute force", LemmaBruteForce},
      {"m2_reduction", "m = 2 reduction", MTwoReduction},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  if (wanted.size() == 1 && wanted[0] == "--list") {
    for (const auto& c : Criteria()) std::printf("%s\n", c.name);
    return 0;
  }
  for (const auto& w : wanted) {
    const bool known = std::any_of(Criteria().begin(), Criteria().end(),
                                   [&](const Criterion& c) { return w == c.name; });
    if (!known) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : Criteria()) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) {
      continue;
    }
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s  %-40s %s\n", v.pass ? "PASS" : "FAIL", c.title,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
