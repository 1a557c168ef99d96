// Copyright 2026 The curvsir Authors.
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

#ifndef CURVSIR_GRAPH_HPP_
#define CURVSIR_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace curvsir {

using NodeId = std::uint32_t;

// Undirected edge in canonical form: u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph stored as CSR adjacency. Edges are canonical
// (u < v) and sorted, neighbor lists are sorted. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Rejects self-loops, out-of-range indices and duplicate edges, including
  // mirrored duplicates such as (0,1),(1,0).
  static Graph build(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  // Edge index (into edges()) for each slot of neighbors(i).
  std::span<const std::size_t> incident_edges(NodeId i) const {
    return {slot_edge_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  // Index of edge {i, j} in edges(), if present.
  std::optional<std::size_t> find_edge(NodeId i, NodeId j) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> slot_edge_;
};

// Breadth-first reachability from node 0.
bool is_connected(const Graph& g);

// Per-node community labels, 0-based and dense.
class CommunityPartition {
 public:
  CommunityPartition() = default;

  // Throws if some community in [0, max label] is empty.
  static CommunityPartition from_labels(std::vector<std::uint32_t> labels);
  // Consecutive blocks: sizes {2,3} gives labels 0,0,1,1,1.
  static CommunityPartition from_sizes(std::span<const std::size_t> sizes);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t community_count() const { return sizes_.size(); }
  std::uint32_t label(NodeId i) const { return labels_[i]; }
  std::span<const std::uint32_t> labels() const { return labels_; }
  std::span<const std::size_t> sizes() const { return sizes_; }

  friend bool operator==(const CommunityPartition&,
                         const CommunityPartition&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> sizes_;
};

struct SbmOptions {
  std::vector<std::size_t> sizes;
  double p_in = 0.3;
  double p_out = 0.02;
  std::uint64_t seed = 1;
  int max_retries = 32;
};

struct SbmSample {
  Graph graph;
  CommunityPartition partition;
  // Seed of the accepted (connected) draw; options.seed + number of retries.
  std::uint64_t seed_used = 0;
};

// Stochastic block model with consecutive blocks. A disconnected draw is
// redrawn with seed + 1, up to max_retries times, then NumericalError.
SbmSample sbm_generate(const SbmOptions& options);

Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);

// Random spanning tree plus each remaining pair with probability
// extra_edge_p. Always connected.
Graph random_connected_graph(std::size_t n, double extra_edge_p,
                             std::uint64_t seed);

// Uniform-ish d-regular simple graph via the pairing model with restarts.
// Requires n * d even and d < n. The result may be disconnected.
Graph random_regular_graph(std::size_t n, std::size_t degree,
                           std::uint64_t seed);

// Edge-list text format: first line "n <count>", then "<i> <j>" per edge.
// Blank lines and lines starting with '#' are skipped.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace curvsir

#endif  // CURVSIR_GRAPH_HPP_
