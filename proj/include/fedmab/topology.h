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

#ifndef FEDMAB_TOPOLOGY_H_
#define FEDMAB_TOPOLOGY_H_

#include <ostream>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "fedmab/rng.h"

namespace fedmab {

// Simple undirected graph over vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  // Duplicate edges are merged. Throws std::invalid_argument on self-loops
  // or out-of-range endpoints.
  Graph(int vertex_count, std::span<const std::pair<int, int>> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool HasEdge(int u, int v) const;
  int EdgeCount() const;
  // Each edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> Edges() const;
  bool IsConnected() const;

 private:
  std::vector<std::vector<int>> adjacency_;
};

enum class TopologyKind { kStar, kRing, kComplete, kDRegular, kRandom };

struct TopologySpec {
  TopologyKind kind = TopologyKind::kComplete;
  int degree = 0;          // kDRegular
  double edge_prob = 0.0;  // kRandom
};

// Builds a connected graph of the requested family on n vertices. Star
// uses vertex 0 as hub. Random kinds are redrawn up to kMaxTopologyRetries
// times until connected. Throws std::invalid_argument for infeasible
// parameters and std::runtime_error when retries run out.
inline constexpr int kMaxTopologyRetries = 100;
Graph BuildTopology(const TopologySpec& spec, int n, RandomStream& rng);

// Reason the spec cannot produce a connected graph on n vertices, or empty.
std::string TopologyFeasibility(const TopologySpec& spec, int n);

// All-pairs hop distances.
class PathTable {
 public:
  static constexpr int kUnreachable = -1;

  explicit PathTable(int n) : n_(n), dist_(static_cast<size_t>(n) * n, kUnreachable) {}

  int size() const { return n_; }
  int at(int i, int j) const { return dist_[static_cast<size_t>(i) * n_ + j]; }
  int& at(int i, int j) { return dist_[static_cast<size_t>(i) * n_ + j]; }
  bool connected() const;

 private:
  int n_;
  std::vector<int> dist_;
};

// BFS from one source into row `source` of the table.
void BreadthFirstRow(const Graph& g, int source, PathTable& table);

// BFS from every vertex, sources distributed over OpenMP threads.
PathTable ShortestPaths(const Graph& g);
// Single-threaded reference for ShortestPaths.
PathTable ShortestPathsSerial(const Graph& g);

// Largest finite hop distance. Throws std::invalid_argument when the graph
// is disconnected.
int Diameter(const Graph& g);
int Diameter(const PathTable& table);

struct SinkAssignment {
  std::vector<int> sinks;         // local vertex index per component
  std::vector<int> local_delays;  // max hop distance to the sink
  int global_delay = 0;
};

// For each component: rank candidates by max_j sd(i, j) - 1, pick the
// lowest-index minimizer as sink, and report the max distance to it.
// Throws std::invalid_argument for a disconnected component.
SinkAssignment FindSinkAgents(std::span<const Graph> components);

struct Component {
  std::vector<int> members;  // global agent ids, ascending
  Graph graph;               // over local indices 0..members.size()-1
  int sink = 0;              // local index
  int local_delay = 0;
  int global_sink() const { return members[sink]; }
};

struct ComponentLayout {
  std::vector<Component> components;
  int global_delay = 0;
  int agent_count() const;
};

// Assigns contiguous global ids in component order and locates sinks.
ComponentLayout BuildComponentLayout(std::vector<Graph> graphs);

// One "i j" line per edge.
void WriteEdgeList(const Graph& g, std::ostream& out);

}  // namespace fedmab

#endif  // FEDMAB_TOPOLOGY_H_
