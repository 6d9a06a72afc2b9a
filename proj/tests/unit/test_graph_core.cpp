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

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "typedpa/error.hpp"
#include "typedpa/graph_state.hpp"
#include "typedpa/rng.hpp"
#include "typedpa/type_rule.hpp"

using namespace typedpa;

namespace {

const std::filesystem::path kData = TYPEDPA_TEST_DATA;

// Degrees (4, 2, 2): vertex 0 joined twice to each of 1 and 2.
StartGraph Star422() {
  StartGraph g;
  g.types = {kRock, kPaper, kScissors};
  g.edges = {{0, 1}, {0, 1}, {0, 2}, {0, 2}};
  g.num_types = 3;
  return g;
}

std::vector<double> NeighborFrequencies(const GraphState& s, Rng& rng,
                                        int draws) {
  std::vector<double> hits(s.num_vertices(), 0.0);
  for (int i = 0; i < draws; ++i) hits[s.SampleNeighbor(rng)] += 1.0;
  for (auto& h : hits) h /= draws;
  return hits;
}

}  // namespace

TEST_CASE("init from named starts") {
  GraphState k3(NamedStartGraph("k3"), 0.0);
  CHECK(k3.gamma() == 6.0);
  for (auto d : k3.degrees()) CHECK(d == 2);

  GraphState k6(NamedStartGraph("k6"), 0.0);
  CHECK(k6.gamma() == 30.0);
  CHECK(std::vector<std::uint64_t>(k6.type_edge_ends().begin(),
                                   k6.type_edge_ends().end()) ==
        std::vector<std::uint64_t>{10, 10, 10});

  GraphState affine(NamedStartGraph("k3"), 1.0);
  CHECK(affine.gamma() == doctest::Approx(9.0).epsilon(1e-15));
  double weights = 0.0;
  for (auto d : affine.degrees()) weights += d + 1.0;
  CHECK(weights == affine.gamma());
}

TEST_CASE("init rejects malformed starts") {
  StartGraph missing_type = NamedStartGraph("k3");
  missing_type.types[2] = kRock;
  CHECK_THROWS_AS(GraphState(missing_type, 0.0), Error);

  StartGraph isolated = NamedStartGraph("k3");
  isolated.types.push_back(kRock);
  CHECK_THROWS_AS(GraphState(isolated, 0.0), Error);

  CHECK_THROWS_AS(GraphState(NamedStartGraph("k3"), -2.0), Error);
  CHECK_THROWS_AS(GraphState(NamedStartGraph("k3"), -3.0), Error);

  // A degree-1 start vertex cannot carry alpha <= -1.
  StartGraph path;
  path.types = {kRock, kPaper, kScissors};
  path.edges = {{0, 1}, {1, 2}};
  path.num_types = 3;
  CHECK_NOTHROW(GraphState(path, -0.5));
  CHECK_THROWS_AS(GraphState(path, -1.0), Error);

  CHECK_THROWS_AS(NamedStartGraph("k4"), Error);
}

TEST_CASE("sample_neighbor probabilities") {
  Rng rng(7);
  GraphState k3(NamedStartGraph("k3"), 0.0);
  for (double f : NeighborFrequencies(k3, rng, 300000)) {
    CHECK(std::abs(f - 1.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / 300000));
  }
  GraphState star(Star422(), 0.0);
  const auto f = NeighborFrequencies(star, rng, 300000);
  const double expect[] = {0.5, 0.25, 0.25};
  for (int v = 0; v < 3; ++v) {
    const double sd = std::sqrt(expect[v] * (1 - expect[v]) / 300000);
    CHECK(std::abs(f[v] - expect[v]) < 4.0 * sd);
  }
  GraphState k3a(NamedStartGraph("k3"), 1.0);
  for (double g : NeighborFrequencies(k3a, rng, 300000)) {
    CHECK(std::abs(g - 1.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / 300000));
  }
}

TEST_CASE("empirical sampling law, 1e6 draws, 4 sigma") {
  for (double alpha : {-0.5, 0.0, 1.0, 2.0}) {
    CAPTURE(alpha);
    GraphState s(Star422(), alpha);
    Rng rng(1234);
    constexpr int kDraws = 1000000;
    const auto f = NeighborFrequencies(s, rng, kDraws);
    for (std::size_t v = 0; v < f.size(); ++v) {
      const double p = (s.degrees()[v] + alpha) / s.gamma();
      const double sd = std::sqrt(p * (1 - p) / kDraws);
      CHECK(std::abs(f[v] - p) <= 4.0 * sd);
    }
  }
}

TEST_CASE("add_vertex tallies follow u + m e_new") {
  const TypeRule rps = TypeRule::RockPaperScissors();
  GraphState s(NamedStartGraph("k3"), 0.0);
  Rng rng(99);
  std::map<std::pair<CountVector, TypeIndex>, int> seen;
  for (int i = 0; i < 3000; ++i) {
    const std::vector<std::uint64_t> before(s.type_edge_ends().begin(),
                                            s.type_edge_ends().end());
    const auto step = s.AddVertex(rps, rng);
    const CountVector u(step.neighbor_counts.begin(),
                        step.neighbor_counts.end());
    for (std::size_t t = 0; t < 3; ++t) {
      const std::uint64_t expect =
          before[t] + u[t] + (t == step.new_type ? 2 : 0);
      CHECK(s.type_edge_ends()[t] == expect);
    }
    ++seen[{u, step.new_type}];
  }
  // The three documented cases all occurred with the documented winner.
  CHECK(seen.count({{2, 0, 0}, kRock}) == 1);      // rock +4
  CHECK(seen.count({{1, 1, 0}, kPaper}) == 1);     // rock +1, paper +3
  CHECK(seen.count({{1, 0, 1}, kRock}) == 1);      // rock +3, scissors +1
  CHECK(seen.count({{1, 1, 0}, kRock}) == 0);
  CHECK(seen.count({{1, 0, 1}, kScissors}) == 0);
  CHECK_NOTHROW(s.CheckInvariants());
}

TEST_CASE("invariants hold while growing") {
  const TypeRule rps = TypeRule::RockPaperScissors();
  for (double alpha : {0.0, -0.5, 1.0}) {
    CAPTURE(alpha);
    GraphState s(NamedStartGraph("k6"), alpha);
    Rng rng(5);
    for (int n = 1; n <= 2000; ++n) {
      s.AddVertex(rps, rng);
      if (n % 97 == 0) {
        s.CheckInvariants();
        std::uint64_t sum_deg = 0;
        for (auto d : s.degrees()) sum_deg += d;
        CHECK(sum_deg == s.edge_end_owners().size());
        CHECK(sum_deg == 2 * (s.start_edges() + 2 * s.step()));
        CHECK(s.gamma() == doctest::Approx(sum_deg + alpha * s.num_vertices())
                               .epsilon(1e-15));
        if (alpha == 0.0) CHECK(s.gamma() == 4.0 * n + 2.0 * s.start_edges());
        double total = 0.0;
        for (double x : s.Shares()) total += x;
        CHECK(std::abs(total - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("shares") {
  GraphState k3(NamedStartGraph("k3"), 0.0);
  for (double x : k3.Shares()) CHECK(x == doctest::Approx(1.0 / 3.0));
  GraphState k3a(NamedStartGraph("k3"), 1.0);
  for (double x : k3a.Shares()) CHECK(x == doctest::Approx(1.0 / 3.0));

  GraphState uneven(LoadStartGraph(kData / "k3_extra.txt"), 0.0);
  const auto sh = uneven.Shares();
  CHECK(sh[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sh[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(sh[2] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("determinism") {
  const TypeRule rps = TypeRule::RockPaperScissors();
  auto run = [&](std::uint64_t seed) {
    GraphState s(NamedStartGraph("k3"), 0.0);
    Rng rng = Rng::ForStream(42, seed);
    for (int i = 0; i < 5000; ++i) s.AddVertex(rps, rng);
    return std::vector<VertexIndex>(s.edge_end_owners().begin(),
                                    s.edge_end_owners().end());
  };
  CHECK(run(3) == run(3));
  CHECK(run(3) != run(4));
}

TEST_CASE("edge-list parsing") {
  std::istringstream good("3 3 3\n0 0\n1 1\n2 2\n0 1\n1 2\n2 0\n");
  const StartGraph g = ParseStartGraph(good);
  CHECK(g.types.size() == 3);
  CHECK(g.edges.size() == 3);
  std::istringstream bad_type("2 1 2\n0 0\n1 5\n0 1\n");
  CHECK_THROWS_AS(ParseStartGraph(bad_type), Error);
  std::istringstream truncated("3 3 3\n0 0\n1 1\n2 2\n0 1\n");
  CHECK_THROWS_AS(ParseStartGraph(truncated), Error);
  CHECK_THROWS_AS(LoadStartGraph(kData / "no_such_file.txt"), Error);
  CHECK(ResolveStartGraph("k6").types.size() == 6);
}
