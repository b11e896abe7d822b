//
// Copyright 2026 The fedmab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedmab/topology.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace fedmab {

Graph::Graph(int vertex_count, std::span<const std::pair<int, int>> edges)
    : adjacency_(vertex_count) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("graph: self-loop");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool Graph::HasEdge(int u, int v) const {
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

int Graph::EdgeCount() const {
  size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return static_cast<int>(twice / 2);
}

std::vector<std::pair<int, int>> Graph::Edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

bool Graph::IsConnected() const {
  if (vertex_count() == 0) return true;
  std::vector<char> seen(vertex_count(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == vertex_count();
}

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList RandomEdges(int n, double p, RandomStream& rng) {
  EdgeList edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.Uniform() < p) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Random d-regular pairing with incremental rejection of loops and
// multi-edges; returns false when the partial pairing gets stuck.
bool TryRegularPairing(int n, int d, RandomStream& rng, EdgeList& edges) {
  edges.clear();
  std::vector<int> points;
  points.reserve(static_cast<size_t>(n) * d);
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < d; ++j) points.push_back(v);
  }
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  while (!points.empty()) {
    const size_t remaining = points.size();
    bool paired = false;
    for (size_t attempt = 0; attempt < 50 * remaining && !paired; ++attempt) {
      size_t a = rng.Below(remaining);
      size_t b = rng.Below(remaining);
      int u = points[a];
      int v = points[b];
      if (a == b || u == v || adjacent[u][v]) continue;
      adjacent[u][v] = adjacent[v][u] = 1;
      edges.emplace_back(std::min(u, v), std::max(u, v));
      if (a < b) std::swap(a, b);
      points[a] = points.back();
      points.pop_back();
      points[b] = points.back();
      points.pop_back();
      paired = true;
    }
    if (!paired) return false;
  }
  return true;
}

EdgeList Complement(int n, const EdgeList& edges) {
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  for (auto [u, v] : edges) present[u][v] = present[v][u] = 1;
  EdgeList out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!present[u][v]) out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace

std::string TopologyFeasibility(const TopologySpec& spec, int n) {
  if (n < 1) return "topology needs at least one vertex";
  switch (spec.kind) {
    case TopologyKind::kDRegular: {
      const int d = spec.degree;
      if (n == 1 && d == 0) return {};
      if (d < 1 || d >= n) {
        return "d-regular needs 1 <= d <= n-1 (d=" + std::to_string(d) +
               ", n=" + std::to_string(n) + ")";
      }
      if ((static_cast<long>(d) * n) % 2 != 0) {
        return "d-regular needs d*n even (d=" + std::to_string(d) +
               ", n=" + std::to_string(n) + ")";
      }
      if (d == 1 && n > 2) return "1-regular graph on more than 2 vertices is disconnected";
      return {};
    }
    case TopologyKind::kRandom:
      if (n > 1 && !(spec.edge_prob > 0.0 && spec.edge_prob <= 1.0)) {
        return "random graph needs edge_prob in (0, 1]";
      }
      return {};
    default:
      return {};
  }
}

Graph BuildTopology(const TopologySpec& spec, int n, RandomStream& rng) {
  if (std::string why = TopologyFeasibility(spec, n); !why.empty()) {
    throw std::invalid_argument(why);
  }
  EdgeList edges;
  switch (spec.kind) {
    case TopologyKind::kStar:
      for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
      return Graph(n, edges);
    case TopologyKind::kRing:
      for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      if (n > 2) edges.emplace_back(n - 1, 0);
      return Graph(n, edges);
    case TopologyKind::kComplete:
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      }
      return Graph(n, edges);
    case TopologyKind::kDRegular: {
      if (n == 1) return Graph(1, edges);
      // Dense targets are built as the complement of a sparse pairing.
      const bool complement = spec.degree > (n - 1) / 2;
      const int d = complement ? n - 1 - spec.degree : spec.degree;
      for (int attempt = 0; attempt < kMaxTopologyRetries; ++attempt) {
        if (d > 0 && !TryRegularPairing(n, d, rng, edges)) continue;
        if (d == 0) edges.clear();
        Graph g(n, complement ? Complement(n, edges) : edges);
        if (g.IsConnected()) return g;
      }
      throw std::runtime_error("d-regular: connectivity retries exhausted");
    }
    case TopologyKind::kRandom:
      for (int attempt = 0; attempt < kMaxTopologyRetries; ++attempt) {
        Graph g(n, RandomEdges(n, spec.edge_prob, rng));
        if (g.IsConnected()) return g;
      }
      throw std::runtime_error("random graph: connectivity retries exhausted");
  }
  throw std::invalid_argument("unknown topology kind");
}

bool PathTable::connected() const {
  return std::none_of(dist_.begin(), dist_.end(),
                      [](int d) { return d == kUnreachable; });
}

void BreadthFirstRow(const Graph& g, int source, PathTable& table) {
  std::deque<int> queue = {source};
  table.at(source, source) = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    const int next = table.at(source, u) + 1;
    for (int v : g.neighbors(u)) {
      if (table.at(source, v) == PathTable::kUnreachable) {
        table.at(source, v) = next;
        queue.push_back(v);
      }
    }
  }
}

PathTable ShortestPaths(const Graph& g) {
  const int n = g.vertex_count();
  PathTable table(n);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n; ++s) BreadthFirstRow(g, s, table);
  return table;
}

PathTable ShortestPathsSerial(const Graph& g) {
  const int n = g.vertex_count();
  PathTable table(n);
  for (int s = 0; s < n; ++s) BreadthFirstRow(g, s, table);
  return table;
}

int Diameter(const PathTable& table) {
  if (!table.connected()) {
    throw std::invalid_argument("diameter: graph is disconnected");
  }
  int d = 0;
  for (int i = 0; i < table.size(); ++i) {
    for (int j = 0; j < table.size(); ++j) d = std::max(d, table.at(i, j));
  }
  return d;
}

int Diameter(const Graph& g) { return Diameter(ShortestPaths(g)); }

SinkAssignment FindSinkAgents(std::span<const Graph> components) {
  SinkAssignment out;
  for (const Graph& g : components) {
    const PathTable sd = ShortestPaths(g);
    if (!sd.connected()) {
      throw std::invalid_argument("find_sink_agents: component is disconnected");
    }
    const int n = g.vertex_count();
    int sink = 0;
    int best_delay = std::numeric_limits<int>::max();
    for (int i = 0; i < n; ++i) {
      int farthest = 0;
      for (int j = 0; j < n; ++j) farthest = std::max(farthest, sd.at(i, j));
      const int delay = farthest - 1;
      if (delay < best_delay) {
        best_delay = delay;
        sink = i;
      }
    }
    int local_delay = 0;
    for (int i = 0; i < n; ++i) local_delay = std::max(local_delay, sd.at(i, sink));
    out.sinks.push_back(sink);
    out.local_delays.push_back(local_delay);
    out.global_delay = std::max(out.global_delay, local_delay);
  }
  return out;
}

int ComponentLayout::agent_count() const {
  int total = 0;
  for (const auto& c : components) total += static_cast<int>(c.members.size());
  return total;
}

ComponentLayout BuildComponentLayout(std::vector<Graph> graphs) {
  if (graphs.empty()) {
    throw std::invalid_argument("component layout: no components");
  }
  const SinkAssignment sinks = FindSinkAgents(graphs);
  ComponentLayout layout;
  layout.global_delay = sinks.global_delay;
  int next_id = 0;
  for (size_t q = 0; q < graphs.size(); ++q) {
    Component c;
    const int n = graphs[q].vertex_count();
    if (n < 1) throw std::invalid_argument("component layout: empty component");
    for (int i = 0; i < n; ++i) c.members.push_back(next_id++);
    c.graph = std::move(graphs[q]);
    c.sink = sinks.sinks[q];
    c.local_delay = sinks.local_delays[q];
    layout.components.push_back(std::move(c));
  }
  return layout;
}

void WriteEdgeList(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.Edges()) out << u << ' ' << v << '\n';
}

}  // namespace fedmab
