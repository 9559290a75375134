// Copyright 2026 The MSTC Planner Authors
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

// Spanning trees over the spanning graph and the Spiral-STC coverage loop
// that circumnavigates them.

#ifndef MSTC_STC_HPP_
#define MSTC_STC_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "mstc/graph.hpp"
#include "mstc/types.hpp"

namespace mstc {

/// Sum of `values` in ascending order. Equal multisets give bitwise equal sums.
inline double canonical_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

struct TreeEdge {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  double weight = 0.0;
};

struct SpanningTree {
  GridShape shape;  // spanning-grid shape
  NodeId root = kNoNode;
  std::vector<NodeId> parent;        // kNoNode for root and non-members
  std::vector<std::uint8_t> member;  // 1 if the spanning node is in the tree
  std::vector<std::uint8_t> links;   // bit d set: tree edge towards Direction d
  std::vector<TreeEdge> edges;
  double total_weight = 0.0;

  std::size_t node_count() const {
    return static_cast<std::size_t>(std::count(member.begin(), member.end(), std::uint8_t{1}));
  }
  bool contains(NodeId n) const {
    return n >= 0 && static_cast<std::size_t>(n) < member.size() && member[n];
  }
  bool has_link(NodeId n, Direction d) const {
    return (links[n] >> static_cast<int>(d)) & 1U;
  }
  std::vector<NodeId> children(NodeId n) const {
    std::vector<NodeId> out;
    for (const Direction d : kDirections) {
      if (!has_link(n, d)) continue;
      const NodeId m = shape.id(step(shape.cell(n), d));
      if (parent[m] == n) out.push_back(m);
    }
    return out;
  }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

inline Direction direction_between(GridShape shape, NodeId from, NodeId to) {
  const Cell a = shape.cell(from);
  const Cell b = shape.cell(to);
  for (const Direction d : kDirections) {
    if (step(a, d) == b) return d;
  }
  throw Error("internal: spanning nodes are not adjacent");
}

/// Fills parent/links/total from `edges`, which must form a tree on h's nodes.
inline SpanningTree assemble_tree(const SpanningGraph& h, NodeId root, std::vector<TreeEdge> edges) {
  SpanningTree t;
  t.shape = h.shape();
  t.root = root;
  t.parent.assign(t.shape.size(), kNoNode);
  t.member.assign(t.shape.size(), 0);
  t.links.assign(t.shape.size(), 0);
  std::vector<std::vector<NodeId>> adj(t.shape.size());
  std::vector<double> weights;
  for (const TreeEdge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
    t.links[e.a] |= static_cast<std::uint8_t>(1U << static_cast<int>(direction_between(t.shape, e.a, e.b)));
    t.links[e.b] |= static_cast<std::uint8_t>(1U << static_cast<int>(direction_between(t.shape, e.b, e.a)));
    weights.push_back(e.weight);
  }
  std::vector<NodeId> stack{root};
  t.member[root] = 1;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    for (const NodeId m : adj[n]) {
      if (t.member[m]) continue;
      t.member[m] = 1;
      t.parent[m] = n;
      stack.push_back(m);
    }
  }
  t.edges = std::move(edges);
  t.total_weight = canonical_sum(std::move(weights));
  return t;
}

}  // namespace detail

/// Kruskal with (weight, lower id, higher id) ordering. Throws if h is not
/// connected or root is not one of its nodes.
inline SpanningTree minimum_spanning_tree(const SpanningGraph& h, NodeId root) {
  if (!h.contains(root)) throw Error("minimum_spanning_tree: root is not a spanning node");
  std::vector<TreeEdge> candidates;
  for (const NodeId n : h.nodes()) {
    for (const Arc& a : h.arcs(n)) {
      if (a.to > n) candidates.push_back({n, a.to, a.weight});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const TreeEdge& p, const TreeEdge& q) {
    return std::tie(p.weight, p.a, p.b) < std::tie(q.weight, q.a, q.b);
  });
  detail::DisjointSets sets(h.shape().size());
  std::vector<TreeEdge> chosen;
  for (const TreeEdge& e : candidates) {
    if (sets.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b))) chosen.push_back(e);
  }
  const std::size_t n = h.node_count();
  if (chosen.size() + 1 != n) {
    throw Error("minimum_spanning_tree: spanning graph is disconnected (" + std::to_string(n) +
                " nodes, " + std::to_string(chosen.size() + 1) + " reachable in the forest)");
  }
  return detail::assemble_tree(h, root, std::move(chosen));
}

/// Weight-blind depth-first spanning tree (neighbours in E, N, W, S order).
/// This is the tree plain Spiral-STC would circumnavigate.
inline SpanningTree dfs_spanning_tree(const SpanningGraph& h, NodeId root) {
  if (!h.contains(root)) throw Error("dfs_spanning_tree: root is not a spanning node");
  std::vector<std::uint8_t> seen(h.shape().size(), 0);
  std::vector<TreeEdge> edges;
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  seen[root] = 1;
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    bool pushed = false;
    while (next < 4) {
      const Direction d = kDirections[next++];
      const Cell c = step(h.shape().cell(n), d);
      if (!h.contains(c)) continue;
      const NodeId m = h.shape().id(c);
      const auto w = h.weight(n, m);
      if (!w || seen[m]) continue;
      seen[m] = 1;
      edges.push_back({std::min(n, m), std::max(n, m), *w});
      stack.emplace_back(m, 0);
      pushed = true;
      break;
    }
    if (!pushed) stack.pop_back();
  }
  if (edges.size() + 1 != h.node_count()) throw Error("dfs_spanning_tree: spanning graph is disconnected");
  return detail::assemble_tree(h, root, std::move(edges));
}

/// Closed coverage route over covering nodes. Hop i goes nodes[i] -> nodes[i+1 mod n].
struct CoverageLoop {
  GridShape shape;  // covering-grid shape
  std::vector<NodeId> nodes;
  std::vector<double> edge_weights;
  double total_weight = 0.0;

  std::size_t size() const { return nodes.size(); }
  NodeId at(std::size_t i) const { return nodes[i % nodes.size()]; }

  std::optional<std::size_t> index_of(NodeId n) const {
    if (index_.empty()) {
      index_.assign(shape.size(), -1);
      for (std::size_t i = 0; i < nodes.size(); ++i) index_[nodes[i]] = static_cast<std::int64_t>(i);
    }
    if (n < 0 || static_cast<std::size_t>(n) >= index_.size() || index_[n] < 0) return std::nullopt;
    return static_cast<std::size_t>(index_[n]);
  }

 private:
  mutable std::vector<std::int64_t> index_;
};

inline double loop_weight(const CoverageLoop& loop) {
  double s = 0.0;
  for (double w : loop.edge_weights) s += w;
  return s;
}

/// Spiral-STC circumnavigation of `tree`, starting at covering node `start`.
///
/// The route keeps tree edges on its left and visits each block's cells
/// counter-clockwise (SW, SE, NE, NW). From a cell it crosses into the
/// neighbouring block when a tree edge leaves through the cell's outer side,
/// otherwise it moves to the next cell of its own block. Parent-side first,
/// this explores children in counter-clockwise order.
inline CoverageLoop spiral_stc_loop(const CoveringGraph& g, const SpanningGraph& h,
                                    const SpanningTree& tree, NodeId start) {
  if (!g.contains(start) || h.owner(start) == kNoNode || !tree.contains(h.owner(start))) {
    throw Error("spiral_stc_loop: start cell is not covered by the spanning tree");
  }
  // Outer side of each quadrant, and the in-block move to the next quadrant.
  static constexpr std::array<Direction, 4> kOuter{Direction::kSouth, Direction::kEast,
                                                   Direction::kNorth, Direction::kWest};
  static constexpr std::array<Direction, 4> kInner{Direction::kEast, Direction::kNorth,
                                                   Direction::kWest, Direction::kSouth};
  const GridShape& shape = g.shape();
  CoverageLoop loop;
  loop.shape = shape;
  const std::size_t expected = 4 * tree.node_count();
  loop.nodes.reserve(expected);
  NodeId cur = start;
  do {
    loop.nodes.push_back(cur);
    if (loop.nodes.size() > expected) throw Error("internal: coverage loop does not close");
    const Cell c = shape.cell(cur);
    const NodeId block = h.owner(cur);
    const int q = SpanningGraph::quadrant_of(c);
    const Direction d = tree.has_link(block, kOuter[q]) ? kOuter[q] : kInner[q];
    cur = shape.id(step(c, d));
  } while (cur != start);
  if (loop.nodes.size() != expected) throw Error("internal: coverage loop misses covered cells");

  loop.edge_weights.resize(loop.nodes.size());
  for (std::size_t i = 0; i < loop.nodes.size(); ++i) {
    const auto w = g.weight(loop.nodes[i], loop.nodes[(i + 1) % loop.nodes.size()]);
    if (!w) throw Error("internal: coverage loop hop is not a covering-graph edge");
    loop.edge_weights[i] = *w;
  }
  loop.total_weight = loop_weight(loop);
  return loop;
}

}  // namespace mstc

#endif  // MSTC_STC_HPP_
