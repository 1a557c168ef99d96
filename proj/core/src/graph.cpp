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

#include "curvsir/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "curvsir/error.hpp"
#include "curvsir/io_util.hpp"
#include "curvsir/random.hpp"

namespace curvsir {

namespace {

std::string edge_text(NodeId i, NodeId j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Graph Graph::build(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) throw InvalidArgument("graph needs at least one node");
  Graph g;
  g.node_count_ = node_count;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw InvalidArgument("edge " + edge_text(e.u, e.v) +
                            " out of range for n=" + std::to_string(node_count));
    }
    if (e.u == e.v) {
      throw InvalidArgument("self-loop at node " + std::to_string(e.u));
    }
    g.edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  const auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
  if (dup != g.edges_.end()) {
    throw InvalidArgument("duplicate edge " + edge_text(dup->u, dup->v));
  }

  std::vector<std::size_t> degree(node_count, 0);
  for (const Edge& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(node_count + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), g.offsets_.begin() + 1);
  g.adjacency_.resize(g.offsets_.back());
  g.slot_edge_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted canonical edges yield sorted neighbor lists: for node x all
  // (a, x) with a < x precede every (x, b).
  for (std::size_t k = 0; k < g.edges_.size(); ++k) {
    const Edge& e = g.edges_[k];
    g.adjacency_[cursor[e.u]] = e.v;
    g.slot_edge_[cursor[e.u]++] = k;
    g.adjacency_[cursor[e.v]] = e.u;
    g.slot_edge_[cursor[e.v]++] = k;
  }
  return g;
}

std::optional<std::size_t> Graph::find_edge(NodeId i, NodeId j) const {
  if (i >= node_count_ || j >= node_count_) return std::nullopt;
  const auto nbrs = neighbors(i);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
  if (it == nbrs.end() || *it != j) return std::nullopt;
  return incident_edges(i)[static_cast<std::size_t>(it - nbrs.begin())];
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId i = frontier.front();
    frontier.pop();
    for (NodeId j : g.neighbors(i)) {
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

CommunityPartition CommunityPartition::from_labels(
    std::vector<std::uint32_t> labels) {
  CommunityPartition p;
  std::uint32_t max_label = 0;
  for (auto l : labels) max_label = std::max(max_label, l);
  p.sizes_.assign(labels.empty() ? 0 : max_label + 1, 0);
  for (auto l : labels) ++p.sizes_[l];
  for (std::size_t c = 0; c < p.sizes_.size(); ++c) {
    if (p.sizes_[c] == 0) {
      throw InvalidArgument("community " + std::to_string(c) + " is empty");
    }
  }
  p.labels_ = std::move(labels);
  return p;
}

CommunityPartition CommunityPartition::from_sizes(
    std::span<const std::size_t> sizes) {
  std::vector<std::uint32_t> labels;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) {
      throw InvalidArgument("community " + std::to_string(c) + " is empty");
    }
    labels.insert(labels.end(), sizes[c], static_cast<std::uint32_t>(c));
  }
  return from_labels(std::move(labels));
}

SbmSample sbm_generate(const SbmOptions& options) {
  if (options.sizes.empty()) throw InvalidArgument("sbm: no communities");
  if (!(options.p_out > 0.0 && options.p_out <= options.p_in &&
        options.p_in <= 1.0)) {
    throw InvalidArgument("sbm: need 0 < p_out <= p_in <= 1");
  }
  if (options.max_retries < 0) throw InvalidArgument("sbm: max_retries < 0");
  auto partition = CommunityPartition::from_sizes(options.sizes);
  const std::size_t n = partition.node_count();

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(attempt);
    Rng rng(seed);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        const double p = partition.label(i) == partition.label(j)
                             ? options.p_in
                             : options.p_out;
        if (rng.bernoulli(p)) edges.push_back({i, j});
      }
    }
    Graph g = Graph::build(n, edges);
    if (is_connected(g)) return {std::move(g), partition, seed};
  }
  throw NumericalError("sbm: every draw disconnected after " +
                       std::to_string(options.max_retries) +
                       " retries; probabilities too sparse");
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph::build(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::build(n, edges);
}

Graph random_connected_graph(std::size_t n, double extra_edge_p,
                             std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  for (std::size_t k = n; k > 1; --k) {
    std::swap(order[k - 1], order[rng.below(k)]);
  }
  std::set<Edge> edges;
  for (std::size_t k = 1; k < n; ++k) {
    const NodeId a = order[k];
    const NodeId b = order[rng.below(k)];
    edges.insert(a < b ? Edge{a, b} : Edge{b, a});
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.bernoulli(extra_edge_p)) edges.insert({i, j});
    }
  }
  const std::vector<Edge> list(edges.begin(), edges.end());
  return Graph::build(n, list);
}

Graph random_regular_graph(std::size_t n, std::size_t degree,
                           std::uint64_t seed) {
  if (degree >= n || (n * degree) % 2 != 0) {
    throw InvalidArgument("random_regular_graph: need d < n and n*d even");
  }
  Rng rng(seed);
  std::vector<NodeId> stubs;
  stubs.reserve(n * degree);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    stubs.clear();
    for (NodeId i = 0; i < n; ++i) stubs.insert(stubs.end(), degree, i);
    for (std::size_t k = stubs.size(); k > 1; --k) {
      std::swap(stubs[k - 1], stubs[rng.below(k)]);
    }
    std::set<Edge> edges;
    bool simple = true;
    for (std::size_t k = 0; k < stubs.size(); k += 2) {
      NodeId a = stubs[k];
      NodeId b = stubs[k + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!edges.insert({a, b}).second) {
        simple = false;
        break;
      }
    }
    if (simple) {
      const std::vector<Edge> list(edges.begin(), edges.end());
      return Graph::build(n, list);
    }
  }
  throw NumericalError("random_regular_graph: pairing model kept failing");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto tokens = split_whitespace(text);
    if (!n) {
      if (tokens.size() != 2 || tokens[0] != "n") {
        throw ParseError("expected header 'n <count>'", line_no);
      }
      const auto count = parse_uint(tokens[1]);
      if (!count || *count == 0) {
        throw ParseError("bad node count '" + std::string(tokens[1]) + "'",
                         line_no);
      }
      n = static_cast<std::size_t>(*count);
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError("expected '<i> <j>'", line_no);
    }
    const auto i = parse_uint(tokens[0]);
    const auto j = parse_uint(tokens[1]);
    if (!i || !j) {
      throw ParseError("bad node index in '" + std::string(text) + "'",
                       line_no);
    }
    if (*i >= *n || *j >= *n) {
      throw ParseError("node index out of range in '" + std::string(text) + "'",
                       line_no);
    }
    edges.push_back({static_cast<NodeId>(*i), static_cast<NodeId>(*j)});
  }
  if (!n) throw ParseError("missing header 'n <count>'", line_no);
  try {
    return Graph::build(*n, edges);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
}

Graph read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_edge_list(g, out);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace curvsir
