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

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "typedpa/error.hpp"
#include "typedpa/graph_state.hpp"

namespace typedpa {

StartGraph CompleteStartGraph(std::size_t per_type, std::size_t num_types) {
  if (per_type == 0 || num_types == 0) {
    ThrowInvalid("complete start graph needs at least one vertex per type");
  }
  StartGraph g;
  g.num_types = num_types;
  for (std::size_t t = 0; t < num_types; ++t) {
    for (std::size_t k = 0; k < per_type; ++k) {
      g.types.push_back(static_cast<TypeIndex>(t));
    }
  }
  const auto v = static_cast<VertexIndex>(g.types.size());
  for (VertexIndex a = 0; a < v; ++a) {
    for (VertexIndex b = a + 1; b < v; ++b) g.edges.emplace_back(a, b);
  }
  return g;
}

StartGraph NamedStartGraph(std::string_view name) {
  if (name == "k3") return CompleteStartGraph(1, 3);
  if (name == "k6") return CompleteStartGraph(2, 3);
  ThrowInvalid("unknown start graph '" + std::string(name) + "'");
}

StartGraph ParseStartGraph(std::istream& raw) {
  // '#' starts a comment that runs to the end of the line.
  std::stringstream in;
  for (std::string line; std::getline(raw, line);) {
    in << line.substr(0, line.find('#')) << '\n';
  }
  long long v = 0, e = 0, n = 0;
  if (!(in >> v >> e >> n) || v <= 0 || e < 0 || n <= 0) {
    ThrowInvalid("start graph: expected header 'v e N' with v, N > 0");
  }
  StartGraph g;
  g.num_types = static_cast<std::size_t>(n);
  g.types.assign(static_cast<std::size_t>(v), 0);
  std::vector<bool> seen(static_cast<std::size_t>(v), false);
  for (long long i = 0; i < v; ++i) {
    long long idx = 0, type = 0;
    if (!(in >> idx >> type)) {
      ThrowInvalid("start graph: truncated vertex list at line " +
                   std::to_string(i + 2));
    }
    if (idx < 0 || idx >= v) {
      ThrowInvalid("start graph: vertex index " + std::to_string(idx) +
                   " out of range");
    }
    if (type < 0 || type >= n) {
      ThrowInvalid("start graph: type " + std::to_string(type) +
                   " out of range for N=" + std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(idx)]) {
      ThrowInvalid("start graph: vertex " + std::to_string(idx) +
                   " listed twice");
    }
    seen[static_cast<std::size_t>(idx)] = true;
    g.types[static_cast<std::size_t>(idx)] = static_cast<TypeIndex>(type);
  }
  for (long long i = 0; i < e; ++i) {
    long long a = 0, b = 0;
    if (!(in >> a >> b)) {
      ThrowInvalid("start graph: truncated edge list at edge " +
                   std::to_string(i));
    }
    if (a < 0 || a >= v || b < 0 || b >= v) {
      ThrowInvalid("start graph: edge endpoint out of range");
    }
    g.edges.emplace_back(static_cast<VertexIndex>(a),
                         static_cast<VertexIndex>(b));
  }
  std::string trailing;
  if (in >> trailing) ThrowInvalid("start graph: trailing content");
  return g;
}

StartGraph LoadStartGraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowIo("cannot open start graph file " + path.string());
  return ParseStartGraph(in);
}

StartGraph ResolveStartGraph(std::string_view name_or_path) {
  if (name_or_path == "k3" || name_or_path == "k6") {
    return NamedStartGraph(name_or_path);
  }
  return LoadStartGraph(std::filesystem::path(name_or_path));
}

void ValidateStartGraph(const StartGraph& start, double alpha) {
  if (!(alpha > -2.0)) ThrowInvalid("alpha must be > -2");
  if (start.types.empty()) ThrowInvalid("start graph has no vertices");
  if (start.num_types == 0) ThrowInvalid("start graph has N = 0 types");
  const auto v = start.types.size();
  if (v > std::numeric_limits<VertexIndex>::max()) {
    ThrowInvalid("start graph too large");
  }
  std::vector<std::uint64_t> degree(v, 0);
  for (const auto& [a, b] : start.edges) {
    if (a >= v || b >= v) ThrowInvalid("start graph edge endpoint out of range");
    ++degree[a];
    ++degree[b];
  }
  std::vector<bool> present(start.num_types, false);
  for (auto t : start.types) {
    if (t >= start.num_types) ThrowInvalid("start graph type out of range");
    present[t] = true;
  }
  for (std::size_t t = 0; t < start.num_types; ++t) {
    if (!present[t]) {
      ThrowInvalid("start graph is missing type " + std::to_string(t) +
                   "; all types must be represented");
    }
  }
  for (std::size_t i = 0; i < v; ++i) {
    if (degree[i] == 0) {
      ThrowInvalid("start graph vertex " + std::to_string(i) + " is isolated");
    }
    if (!(static_cast<double>(degree[i]) + alpha > 0.0)) {
      ThrowInvalid("start graph vertex " + std::to_string(i) +
                   " has degree + alpha <= 0");
    }
  }
}

}  // namespace typedpa
