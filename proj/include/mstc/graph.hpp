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

// Weighted covering graph (fine grid the robots drive on) and spanning graph
// (one node per fully traversable 2x2 block), plus Dijkstra queries on the
// covering graph.

#ifndef MSTC_GRAPH_HPP_
#define MSTC_GRAPH_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mstc/terrain.hpp"
#include "mstc/types.hpp"

namespace mstc {

struct PlannerConfig {
  double alpha = 1.0 / 3.0;  // distance coefficient
  double beta = 2.0 / 3.0;   // slope coefficient
  double slope_threshold = 25.0;
  int robots = 1;
  Capacity capacity = Capacity::unbounded();

  void validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0)) {
      throw Error("weights need alpha >= 0, beta >= 0 and alpha + beta > 0");
    }
    if (!(slope_threshold > 0.0)) throw Error("slope threshold must be positive");
    if (robots < 1) throw Error("need at least one robot");
  }
};

/// Normalized slope in [0, 1]; zero when the bounds collapse.
inline double normalized_slope(double slope_deg, SlopeBounds bounds) {
  if (slope_deg < bounds.min_deg || slope_deg > bounds.max_deg) {
    throw Error("slope " + std::to_string(slope_deg) + " outside bounds [" +
                std::to_string(bounds.min_deg) + ", " + std::to_string(bounds.max_deg) + "]");
  }
  if (bounds.max_deg == bounds.min_deg) return 0.0;
  return (slope_deg - bounds.min_deg) / (bounds.max_deg - bounds.min_deg);
}

/// w = alpha * length + beta * normalized slope.
inline double edge_weight(double length, double slope_deg, SlopeBounds bounds,
                          const PlannerConfig& config) {
  return config.alpha * length + config.beta * normalized_slope(slope_deg, bounds);
}

struct Arc {
  NodeId to = kNoNode;
  double weight = 0.0;
  double length = 0.0;
  double slope = 0.0;
};

/// Fine-resolution graph over free covering cells. Node ids are grid ids.
class CoveringGraph {
 public:
  CoveringGraph() = default;
  explicit CoveringGraph(GridShape shape) : shape_(shape), present_(shape.size(), 0), adj_(shape.size()) {}

  const GridShape& shape() const { return shape_; }
  bool contains(NodeId n) const {
    return n >= 0 && static_cast<std::size_t>(n) < present_.size() && present_[n];
  }
  bool contains(Cell c) const { return shape_.contains(c) && present_[shape_.id(c)]; }

  const std::vector<Arc>& arcs(NodeId n) const { return adj_[n]; }

  std::optional<double> weight(NodeId a, NodeId b) const {
    if (!contains(a)) return std::nullopt;
    for (const Arc& arc : adj_[a]) {
      if (arc.to == b) return arc.weight;
    }
    return std::nullopt;
  }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < present_.size(); ++i) {
      if (present_[i]) out.push_back(static_cast<NodeId>(i));
    }
    return out;
  }
  std::size_t node_count() const {
    return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), std::uint8_t{1}));
  }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& list : adj_) n += list.size();
    return n / 2;
  }

  void add_node(NodeId n) { present_[n] = 1; }

  void add_edge(NodeId a, NodeId b, double length, double slope, double weight) {
    if (!(weight > 0.0)) throw Error("covering graph edge weights must be positive");
    adj_[a].push_back({b, weight, length, slope});
    adj_[b].push_back({a, weight, length, slope});
  }

  void sort_arcs() {
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(), [](const Arc& p, const Arc& q) { return p.to < q.to; });
    }
  }

 private:
  GridShape shape_;
  std::vector<std::uint8_t> present_;
  std::vector<std::vector<Arc>> adj_;
};

/// Coarse graph with one node per fully traversable 2x2 block of covering cells.
///
/// Spanning node (bx, by) owns covering cells (2bx + {0,1}, 2by + {0,1}).
class SpanningGraph {
 public:
  enum Quadrant : int { kSW = 0, kSE = 1, kNE = 2, kNW = 3 };

  SpanningGraph() = default;
  explicit SpanningGraph(GridShape covering)
      : covering_(covering),
        shape_((covering.width() + 1) / 2, (covering.height() + 1) / 2),
        present_(shape_.size(), 0),
        adj_(shape_.size()) {}

  const GridShape& shape() const { return shape_; }
  const GridShape& covering_shape() const { return covering_; }

  bool contains(NodeId n) const {
    return n >= 0 && static_cast<std::size_t>(n) < present_.size() && present_[n];
  }
  bool contains(Cell c) const { return shape_.contains(c) && present_[shape_.id(c)]; }
  const std::vector<Arc>& arcs(NodeId n) const { return adj_[n]; }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < present_.size(); ++i) {
      if (present_[i]) out.push_back(static_cast<NodeId>(i));
    }
    return out;
  }
  std::size_t node_count() const {
    return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), std::uint8_t{1}));
  }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& list : adj_) n += list.size();
    return n / 2;
  }

  std::optional<double> weight(NodeId a, NodeId b) const {
    if (!contains(a)) return std::nullopt;
    for (const Arc& arc : adj_[a]) {
      if (arc.to == b) return arc.weight;
    }
    return std::nullopt;
  }

  /// Covering cell of `block` in the given quadrant.
  Cell covering_cell(Cell block, int quadrant) const {
    static constexpr std::array<Cell, 4> kQuad{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    return {2 * block.x + kQuad[quadrant].x, 2 * block.y + kQuad[quadrant].y};
  }

  /// The four covering nodes owned by spanning node n, in SW, SE, NE, NW order.
  std::array<NodeId, 4> children(NodeId n) const {
    const Cell b = shape_.cell(n);
    std::array<NodeId, 4> out{};
    for (int q = 0; q < 4; ++q) out[q] = covering_.id(covering_cell(b, q));
    return out;
  }

  /// Owning spanning node of a covering node, or kNoNode if it is not covered.
  NodeId owner(NodeId covering_node) const {
    const Cell c = covering_.cell(covering_node);
    const NodeId b = shape_.id({c.x / 2, c.y / 2});
    return present_[b] ? b : kNoNode;
  }

  static int quadrant_of(Cell covering) { return (covering.y % 2) ? 3 - (covering.x % 2) : (covering.x % 2); }

  void add_node(NodeId n) { present_[n] = 1; }
  void add_edge(NodeId a, NodeId b, double slope, double weight) {
    adj_[a].push_back({b, weight, 2.0, slope});
    adj_[b].push_back({a, weight, 2.0, slope});
  }
  void sort_arcs() {
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(), [](const Arc& p, const Arc& q) { return p.to < q.to; });
    }
  }

  /// Subgraph containing only the connected component of `root`.
  SpanningGraph component(NodeId root) const {
    if (!contains(root)) throw Error("component: root is not a spanning node");
    std::vector<std::uint8_t> seen(present_.size(), 0);
    std::vector<NodeId> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      for (const Arc& a : adj_[n]) {
        if (!seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    SpanningGraph out(covering_);
    for (std::size_t i = 0; i < present_.size(); ++i) {
      if (!seen[i]) continue;
      out.present_[i] = 1;
      out.adj_[i] = adj_[i];
    }
    return out;
  }

 private:
  GridShape covering_;
  GridShape shape_;
  std::vector<std::uint8_t> present_;
  std::vector<std::vector<Arc>> adj_;
};

/// Orthogonal edges from the map (length 1) plus in-block diagonals (length
/// sqrt 2). A diagonal exists when one of its two corner paths is fully
/// retained; it takes the steeper slope of that corner path, choosing the
/// gentler corner when both qualify.
inline CoveringGraph build_covering_graph(const TraversabilityMap& map, const PlannerConfig& config) {
  const GridShape shape = map.shape;
  CoveringGraph g(shape);
  for (int y = 0; y < shape.height(); ++y) {
    for (int x = 0; x < shape.width(); ++x) {
      if (map.is_free({x, y})) g.add_node(shape.id({x, y}));
    }
  }
  map.for_each_edge([&](Cell a, Cell b, double s) {
    g.add_edge(shape.id(a), shape.id(b), 1.0, s, edge_weight(1.0, s, map.bounds, config));
  });

  auto corner_slope = [&](Cell a, Cell corner, Cell b) -> std::optional<double> {
    const auto s1 = map.slope(a, corner);
    const auto s2 = map.slope(corner, b);
    if (!s1 || !s2) return std::nullopt;
    return std::max(*s1, *s2);
  };
  for (int by = 0; 2 * by + 1 < shape.height(); ++by) {
    for (int bx = 0; 2 * bx + 1 < shape.width(); ++bx) {
      const Cell sw{2 * bx, 2 * by}, se{2 * bx + 1, 2 * by}, ne{2 * bx + 1, 2 * by + 1},
          nw{2 * bx, 2 * by + 1};
      const std::array<std::array<Cell, 4>, 2> diagonals{{{sw, ne, se, nw}, {se, nw, sw, ne}}};
      for (const auto& [a, b, c1, c2] : diagonals) {
        if (!map.is_free(a) || !map.is_free(b)) continue;
        const auto via1 = corner_slope(a, c1, b);
        const auto via2 = corner_slope(a, c2, b);
        if (!via1 && !via2) continue;
        const double s = std::min(via1.value_or(std::numeric_limits<double>::infinity()),
                                  via2.value_or(std::numeric_limits<double>::infinity()));
        g.add_edge(shape.id(a), shape.id(b), std::numbers::sqrt2, s,
                   edge_weight(std::numbers::sqrt2, s, map.bounds, config));
      }
    }
  }
  g.sort_arcs();
  return g;
}

/// Spanning nodes for 2x2 blocks whose four cells are free and whose four
/// internal edges are retained; spanning edges where both covering edges
/// crossing the shared boundary are retained (slope = their mean, length 2).
inline SpanningGraph build_spanning_graph(const TraversabilityMap& map, const PlannerConfig& config) {
  SpanningGraph h(map.shape);
  const GridShape& coarse = h.shape();
  auto block_ok = [&](Cell b) {
    if (!coarse.contains(b)) return false;
    std::array<Cell, 4> c{};
    for (int q = 0; q < 4; ++q) {
      c[q] = h.covering_cell(b, q);
      if (!map.is_free(c[q])) return false;
    }
    for (int q = 0; q < 4; ++q) {
      if (!map.has_edge(c[q], c[(q + 1) % 4])) return false;
    }
    return true;
  };
  for (int by = 0; by < coarse.height(); ++by) {
    for (int bx = 0; bx < coarse.width(); ++bx) {
      if (block_ok({bx, by})) h.add_node(coarse.id({bx, by}));
    }
  }
  for (int by = 0; by < coarse.height(); ++by) {
    for (int bx = 0; bx < coarse.width(); ++bx) {
      const Cell b{bx, by};
      if (!h.contains(b)) continue;
      // East neighbour: SE-SW and NE-NW crossings. North: NW-SW and NE-SE.
      const Cell e{bx + 1, by};
      if (h.contains(e)) {
        const auto s1 = map.slope(h.covering_cell(b, SpanningGraph::kSE), h.covering_cell(e, SpanningGraph::kSW));
        const auto s2 = map.slope(h.covering_cell(b, SpanningGraph::kNE), h.covering_cell(e, SpanningGraph::kNW));
        if (s1 && s2) {
          const double s = 0.5 * (*s1 + *s2);
          h.add_edge(coarse.id(b), coarse.id(e), s, edge_weight(2.0, s, map.bounds, config));
        }
      }
      const Cell n{bx, by + 1};
      if (h.contains(n)) {
        const auto s1 = map.slope(h.covering_cell(b, SpanningGraph::kNW), h.covering_cell(n, SpanningGraph::kSW));
        const auto s2 = map.slope(h.covering_cell(b, SpanningGraph::kNE), h.covering_cell(n, SpanningGraph::kSE));
        if (s1 && s2) {
          const double s = 0.5 * (*s1 + *s2);
          h.add_edge(coarse.id(b), coarse.id(n), s, edge_weight(2.0, s, map.bounds, config));
        }
      }
    }
  }
  h.sort_arcs();
  return h;
}

/// Single-source shortest path tree on the covering graph.
struct ShortestPathTree {
  NodeId source = kNoNode;
  std::vector<double> dist;
  std::vector<NodeId> pred;

  bool reachable(NodeId n) const { return !std::isinf(dist[n]); }

  /// Path source -> target (inclusive).
  std::vector<NodeId> path_to(NodeId target) const {
    if (!reachable(target)) throw Error("internal: node " + std::to_string(target) + " unreachable");
    std::vector<NodeId> path;
    for (NodeId n = target; n != kNoNode; n = pred[n]) path.push_back(n);
    std::reverse(path.begin(), path.end());
    return path;
  }
  /// Path target -> source (inclusive); same edges as path_to, reversed.
  std::vector<NodeId> path_from(NodeId target) const {
    auto p = path_to(target);
    std::reverse(p.begin(), p.end());
    return p;
  }
};

/// Dijkstra from `source`. Ties on distance prefer the smaller predecessor id.
/// Stops early once `target` is settled, when given.
inline ShortestPathTree dijkstra(const CoveringGraph& g, NodeId source, NodeId target = kNoNode) {
  if (!g.contains(source)) throw Error("dijkstra: source is not a covering node");
  ShortestPathTree t;
  t.source = source;
  t.dist.assign(g.shape().size(), std::numeric_limits<double>::infinity());
  t.pred.assign(g.shape().size(), kNoNode);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<std::uint8_t> settled(g.shape().size(), 0);
  t.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, n] = heap.top();
    heap.pop();
    if (settled[n]) continue;
    settled[n] = 1;
    if (n == target) break;
    for (const Arc& a : g.arcs(n)) {
      if (settled[a.to]) continue;
      const double nd = d + a.weight;
      if (nd < t.dist[a.to]) {
        t.dist[a.to] = nd;
        t.pred[a.to] = n;
        heap.push({nd, a.to});
      } else if (nd == t.dist[a.to] && n < t.pred[a.to]) {
        t.pred[a.to] = n;
      }
    }
  }
  return t;
}

struct PathResult {
  std::vector<NodeId> path;
  double cost = 0.0;
};

inline PathResult shortest_path(const CoveringGraph& g, NodeId from, NodeId to) {
  if (!g.contains(from) || !g.contains(to)) throw Error("shortest_path: endpoint is not a covering node");
  const ShortestPathTree t = dijkstra(g, from, to);
  if (!t.reachable(to)) {
    throw Error("internal: covering nodes " + std::to_string(from) + " and " + std::to_string(to) +
                " are disconnected");
  }
  return {t.path_to(to), t.dist[to]};
}

/// Debug dump: node list and edge list with weights.
template <typename Graph>
nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json doc;
  doc["nodes"] = nlohmann::json::array();
  doc["edges"] = nlohmann::json::array();
  for (const NodeId n : g.nodes()) {
    const Cell c = g.shape().cell(n);
    doc["nodes"].push_back({c.x, c.y});
    for (const Arc& a : g.arcs(n)) {
      if (a.to < n) continue;
      const Cell d = g.shape().cell(a.to);
      doc["edges"].push_back({{"a", {c.x, c.y}}, {"b", {d.x, d.y}}, {"weight", a.weight},
                              {"length", a.length}, {"slope", a.slope}});
    }
  }
  return doc;
}

}  // namespace mstc

#endif  // MSTC_GRAPH_HPP_
