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

#include "typedpa/graph_state.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "typedpa/error.hpp"

namespace typedpa {

GraphState::GraphState(const StartGraph& start, double alpha)
    : alpha_(alpha),
      v0_(start.types.size()),
      e0_(start.edges.size()),
      num_edges_(start.edges.size()) {
  ValidateStartGraph(start, alpha);
  vertex_types_ = start.types;
  degree_.assign(start.types.size(), 0);
  type_edge_ends_.assign(start.num_types, 0);
  type_vertices_.assign(start.num_types, 0);
  owners_.reserve(2 * start.edges.size());
  for (const auto& [a, b] : start.edges) {
    for (VertexIndex end : {a, b}) {
      owners_.push_back(end);
      ++degree_[end];
      ++type_edge_ends_[vertex_types_[end]];
    }
  }
  for (auto t : vertex_types_) ++type_vertices_[t];
  counts_scratch_.assign(start.num_types, 0);
}

double GraphState::gamma() const {
  return static_cast<double>(owners_.size()) +
         alpha_ * static_cast<double>(vertex_types_.size());
}

double GraphState::TypeWeight(TypeIndex t) const {
  return static_cast<double>(type_edge_ends_[t]) +
         alpha_ * static_cast<double>(type_vertices_[t]);
}

VertexIndex GraphState::SampleNeighbor(Rng& rng) const {
  if (alpha_ == 0.0) return owners_[rng.Below(owners_.size())];
  if (alpha_ > 0.0) {
    // Mixture: an edge end with probability sum(degree)/gamma, otherwise a
    // uniform vertex.
    const double total_degree = static_cast<double>(owners_.size());
    if (rng.Uniform() * gamma() < total_degree) {
      return owners_[rng.Below(owners_.size())];
    }
    return static_cast<VertexIndex>(rng.Below(vertex_types_.size()));
  }
  // alpha in (-2, 0): propose by degree, accept with (degree + alpha)/degree.
  for (;;) {
    const VertexIndex v = owners_[rng.Below(owners_.size())];
    const double d = degree_[v];
    if (rng.Uniform() * d < d + alpha_) return v;
  }
}

StepRecord GraphState::AddVertex(const TypeRule& rule, Rng& rng) {
  const std::uint32_t m = rule.m();
  if (rule.num_types() != num_types()) {
    ThrowInvalid("rule has N=" + std::to_string(rule.num_types()) +
                 " but the graph has N=" + std::to_string(num_types()));
  }
  if (!(static_cast<double>(m) + alpha_ > 0.0)) {
    ThrowInvalid("new vertices would have degree + alpha <= 0 (m + alpha <= 0)");
  }
  if (vertex_types_.size() >= std::numeric_limits<VertexIndex>::max()) {
    ThrowDomain("vertex index space exhausted");
  }

  std::fill(counts_scratch_.begin(), counts_scratch_.end(), 0);
  sampled_scratch_.resize(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const VertexIndex v = SampleNeighbor(rng);
    sampled_scratch_[i] = v;
    ++counts_scratch_[vertex_types_[v]];
  }
  const TypeIndex new_type = rule.SampleType(counts_scratch_, rng);

  const auto new_vertex = static_cast<VertexIndex>(vertex_types_.size());
  vertex_types_.push_back(new_type);
  degree_.push_back(m);
  ++type_vertices_[new_type];
  for (VertexIndex v : sampled_scratch_) {
    owners_.push_back(v);
    owners_.push_back(new_vertex);
    ++degree_[v];
    ++type_edge_ends_[vertex_types_[v]];
  }
  type_edge_ends_[new_type] += m;
  num_edges_ += m;

#ifndef NDEBUG
  const auto tally = std::accumulate(type_edge_ends_.begin(),
                                     type_edge_ends_.end(), std::uint64_t{0});
  if (tally != owners_.size() || owners_.size() != 2 * num_edges_) {
    throw Error(ErrorCode::kInternal, "edge-end tallies out of sync");
  }
#endif
  return StepRecord{counts_scratch_, new_type};
}

std::vector<double> GraphState::Shares() const {
  std::vector<double> out(num_types());
  SharesInto(out);
  return out;
}

void GraphState::SharesInto(std::span<double> out) const {
  const double g = gamma();
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = TypeWeight(static_cast<TypeIndex>(t)) / g;
  }
}

void GraphState::Reserve(std::uint64_t steps, std::uint32_t m) {
  owners_.reserve(owners_.size() + 2 * m * steps);
  degree_.reserve(degree_.size() + steps);
  vertex_types_.reserve(vertex_types_.size() + steps);
}

void GraphState::CheckInvariants() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInternal, "graph invariant violated: " + what);
  };
  const std::uint64_t degree_sum =
      std::accumulate(degree_.begin(), degree_.end(), std::uint64_t{0});
  if (degree_sum != owners_.size()) fail("sum(degree) != #edge ends");
  if (owners_.size() != 2 * num_edges_) fail("#edge ends != 2 * #edges");
  std::vector<std::uint64_t> recount(degree_.size(), 0);
  std::vector<std::uint64_t> per_type(num_types(), 0);
  for (VertexIndex v : owners_) {
    if (v >= degree_.size()) fail("edge end owner out of range");
    ++recount[v];
    ++per_type[vertex_types_[v]];
  }
  for (std::size_t v = 0; v < degree_.size(); ++v) {
    if (recount[v] != degree_[v]) fail("degree of vertex " + std::to_string(v));
  }
  for (std::size_t t = 0; t < num_types(); ++t) {
    if (per_type[t] != type_edge_ends_[t]) fail("type edge-end tally");
    if (type_edge_ends_[t] == 0) fail("type " + std::to_string(t) + " vanished");
  }
  std::vector<std::uint64_t> vcount(num_types(), 0);
  for (auto t : vertex_types_) ++vcount[t];
  if (vcount != type_vertices_) fail("per-type vertex counts");
}

}  // namespace typedpa
