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

#ifndef TYPEDPA_GRAPH_STATE_HPP_
#define TYPEDPA_GRAPH_STATE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "typedpa/rng.hpp"
#include "typedpa/type_rule.hpp"

namespace typedpa {

using VertexIndex = std::uint32_t;

struct StartGraph {
  std::vector<TypeIndex> types;  // one entry per vertex
  std::vector<std::pair<VertexIndex, VertexIndex>> edges;
  std::size_t num_types = 0;
};

// Complete graph on per_type * num_types vertices with per_type vertices of
// each type, listed type-major.
StartGraph CompleteStartGraph(std::size_t per_type, std::size_t num_types);

// "k3": one rock, paper and scissors vertex; "k6": two of each.
StartGraph NamedStartGraph(std::string_view name);

// Edge-list text format: a "v e N" header, v lines "vertex_index type_index",
// then e lines "endpoint endpoint". "#" comments run to end of line.
StartGraph ParseStartGraph(std::istream& in);
StartGraph LoadStartGraph(const std::filesystem::path& path);

// A built-in name if one matches, otherwise a file path.
StartGraph ResolveStartGraph(std::string_view name_or_path);

// Throws unless every type 0..N-1 is present, vertex indices are contiguous
// and every vertex has degree(v) + alpha > 0 (so degree >= 1 for alpha >= 0).
void ValidateStartGraph(const StartGraph& start, double alpha);

// What add_vertex did. neighbor_counts views scratch storage inside the
// GraphState and is only valid until the next mutation.
struct StepRecord {
  std::span<const std::uint32_t> neighbor_counts;
  TypeIndex new_type = 0;
};

// Preferential-attachment multigraph grown one vertex at a time. Vertex v is
// picked with probability (degree(v) + alpha) / gamma, where
// gamma = sum(degree) + alpha * num_vertices.
class GraphState {
 public:
  GraphState(const StartGraph& start, double alpha);

  std::size_t num_types() const { return type_edge_ends_.size(); }
  std::uint64_t num_vertices() const { return vertex_types_.size(); }
  std::uint64_t num_edges() const { return num_edges_; }
  std::uint64_t start_vertices() const { return v0_; }
  std::uint64_t start_edges() const { return e0_; }
  // Number of vertices added since the start graph.
  std::uint64_t step() const { return num_vertices() - v0_; }
  double alpha() const { return alpha_; }
  double gamma() const;

  std::span<const VertexIndex> edge_end_owners() const { return owners_; }
  std::span<const std::uint32_t> degrees() const { return degree_; }
  std::span<const TypeIndex> vertex_types() const { return vertex_types_; }
  std::span<const std::uint64_t> type_edge_ends() const {
    return type_edge_ends_;
  }
  std::span<const std::uint64_t> type_vertex_counts() const {
    return type_vertices_;
  }

  // sum over vertices v of type t of (degree(v) + alpha).
  double TypeWeight(TypeIndex t) const;

  VertexIndex SampleNeighbor(Rng& rng) const;

  // Samples rule.m() neighbors with replacement, draws the new vertex's type
  // from p_u and appends the m edges.
  StepRecord AddVertex(const TypeRule& rule, Rng& rng);

  // Normalized attachment weight per type; for alpha = 0 the edge-end shares.
  std::vector<double> Shares() const;
  void SharesInto(std::span<double> out) const;

  void Reserve(std::uint64_t steps, std::uint32_t m);

  // Full O(V + E) consistency check; throws Error(kInternal) on violation.
  void CheckInvariants() const;

 private:
  double alpha_;
  std::uint64_t v0_;
  std::uint64_t e0_;
  std::uint64_t num_edges_;
  std::vector<VertexIndex> owners_;
  std::vector<std::uint32_t> degree_;
  std::vector<TypeIndex> vertex_types_;
  std::vector<std::uint64_t> type_edge_ends_;
  std::vector<std::uint64_t> type_vertices_;
  std::vector<std::uint32_t> counts_scratch_;
  std::vector<VertexIndex> sampled_scratch_;
};

}  // namespace typedpa

#endif  // TYPEDPA_GRAPH_STATE_HPP_
