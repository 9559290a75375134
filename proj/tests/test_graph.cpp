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

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mstc.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using mstc::Cell;
using mstc::PlannerConfig;
using mstc::Scene;
using mstc::SlopeBounds;

PlannerConfig unweighted() {
  PlannerConfig c;
  c.alpha = 1.0;
  c.beta = 0.0;
  return c;
}

TEST(EdgeWeight, FrozenValues) {
  const PlannerConfig c;
  const SlopeBounds b{0.0, 25.0};
  EXPECT_EQ(mstc::edge_weight(1.0, 25.0, b, c), 1.0);
  EXPECT_EQ(mstc::edge_weight(1.0, 0.0, b, c), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(mstc::edge_weight(std::numbers::sqrt2, 12.5, b, c), std::numbers::sqrt2 / 3.0 + 1.0 / 3.0);
  EXPECT_EQ(mstc::edge_weight(1.0, 7.0, b, unweighted()), 1.0);
}

TEST(EdgeWeight, CollapsedBoundsGiveDistanceOnly) {
  const PlannerConfig c;
  EXPECT_DOUBLE_EQ(mstc::edge_weight(2.0, 5.0, SlopeBounds{5.0, 5.0}, c), 2.0 / 3.0);
}

TEST(EdgeWeight, SlopeOutsideBoundsThrows) {
  const PlannerConfig c;
  EXPECT_THROW(mstc::edge_weight(1.0, 26.0, SlopeBounds{0.0, 25.0}, c), mstc::Error);
  EXPECT_THROW(mstc::edge_weight(1.0, 1.0, SlopeBounds{2.0, 25.0}, c), mstc::Error);
}

TEST(PlannerConfig, Validation) {
  PlannerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.alpha = -0.1;
  EXPECT_THROW(c.validate(), mstc::Error);
  c.alpha = 0.0;
  c.beta = 0.0;
  EXPECT_THROW(c.validate(), mstc::Error);
  c = PlannerConfig{};
  c.slope_threshold = 0.0;
  EXPECT_THROW(c.validate(), mstc::Error);
}

TEST(CoveringGraph, FlatBlockEdges) {
  const auto map = mstc::initial_map(Scene::empty(2, 2));
  const auto g = mstc::build_covering_graph(map, PlannerConfig{});
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_DOUBLE_EQ(*g.weight(0, 1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(*g.weight(0, 3), std::numbers::sqrt2 / 3.0);
  EXPECT_DOUBLE_EQ(*g.weight(1, 2), std::numbers::sqrt2 / 3.0);
}

TEST(CoveringGraph, UnweightedModeUsesExactLengths) {
  const auto map = mstc::initial_map(Scene::empty(4, 4));
  const auto g = mstc::build_covering_graph(map, unweighted());
  for (const auto n : g.nodes()) {
    for (const auto& a : g.arcs(n)) {
      const bool diagonal = !mstc::four_adjacent(g.shape().cell(n), g.shape().cell(a.to));
      EXPECT_EQ(a.weight, diagonal ? std::numbers::sqrt2 : 1.0);
    }
  }
  // Diagonals stay inside 2x2 blocks: (1,1)-(2,2) crosses blocks.
  EXPECT_FALSE(g.weight(g.shape().id({1, 1}), g.shape().id({2, 2})));
  EXPECT_TRUE(g.weight(g.shape().id({2, 2}), g.shape().id({3, 3})));
}

TEST(CoveringGraph, DiagonalNeedsARetainedCornerPath) {
  Scene s = Scene::empty(2, 2);
  s.block({1, 0});
  const auto g1 = mstc::build_covering_graph(mstc::initial_map(s), unweighted());
  EXPECT_TRUE(g1.weight(0, 3));  // via (0,1)
  s.block({0, 1});
  const auto g2 = mstc::build_covering_graph(mstc::initial_map(s), unweighted());
  EXPECT_FALSE(g2.weight(0, 3));
}

TEST(CoveringGraph, WeightsMatchRecomputation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scene s = testing_support::rough_dem(seed, 10, 10, 1.5);
    const auto map = mstc::steepness_filter(s, 25.0);
    const PlannerConfig c;
    const auto g = mstc::build_covering_graph(map, c);
    for (const auto n : g.nodes()) {
      for (const auto& a : g.arcs(n)) {
        const Cell p = g.shape().cell(n);
        const Cell q = g.shape().cell(a.to);
        double slope = 0.0;
        double len = 1.0;
        if (mstc::four_adjacent(p, q)) {
          slope = oracle::slope_deg(s, p, q);
        } else {
          len = std::numbers::sqrt2;
          // Gentler of the retained corner paths, each rated by its steeper leg.
          double best = INFINITY;
          for (const Cell corner : {Cell{p.x, q.y}, Cell{q.x, p.y}}) {
            if (map.has_edge(p, corner) && map.has_edge(corner, q)) {
              best = std::min(best, std::max(oracle::slope_deg(s, p, corner), oracle::slope_deg(s, corner, q)));
            }
          }
          ASSERT_TRUE(std::isfinite(best));
          slope = best;
        }
        const double hat = (slope - map.bounds.min_deg) / (map.bounds.max_deg - map.bounds.min_deg);
        EXPECT_GE(hat, -1e-12);
        EXPECT_LE(hat, 1.0 + 1e-12);
        EXPECT_NEAR(a.weight, c.alpha * len + c.beta * hat, 1e-12);
        EXPECT_GT(a.weight, 0.0);
      }
    }
  }
}

TEST(CoveringGraph, ZeroWeightEdgesRejected) {
  PlannerConfig c;
  c.alpha = 0.0;
  c.beta = 1.0;
  EXPECT_THROW(mstc::build_covering_graph(mstc::initial_map(Scene::empty(2, 2)), c), mstc::Error);
}

TEST(SpanningGraph, FreeFourByFour) {
  const auto h = mstc::build_spanning_graph(mstc::initial_map(Scene::empty(4, 4)), unweighted());
  EXPECT_EQ(h.node_count(), 4u);
  EXPECT_EQ(h.edge_count(), 4u);
  for (const auto n : h.nodes()) {
    for (const auto& a : h.arcs(n)) {
      EXPECT_EQ(a.weight, 2.0);
      EXPECT_EQ(a.length, 2.0);
    }
  }
}

TEST(SpanningGraph, BlockedCellRemovesNode) {
  Scene s = Scene::empty(4, 4);
  s.block({3, 3});
  const auto h = mstc::build_spanning_graph(mstc::initial_map(s), unweighted());
  EXPECT_EQ(h.node_count(), 3u);
  EXPECT_FALSE(h.contains(Cell{1, 1}));
  EXPECT_EQ(h.owner(h.covering_shape().id({2, 2})), mstc::kNoNode);
  EXPECT_EQ(h.owner(h.covering_shape().id({1, 1})), h.shape().id({0, 0}));
}

TEST(SpanningGraph, OddDimensionsArePadded) {
  const auto h = mstc::build_spanning_graph(mstc::initial_map(Scene::empty(5, 3)), unweighted());
  EXPECT_EQ(h.shape().width(), 3);
  EXPECT_EQ(h.shape().height(), 2);
  EXPECT_EQ(h.node_count(), 2u);
}

TEST(SpanningGraph, MatchesBlockScanAndOwnership) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene s = testing_support::rough_dem(seed + 50, 12, 10, 2.0);
    const auto map = mstc::steepness_filter(s, 25.0);
    const auto h = mstc::build_spanning_graph(map, PlannerConfig{});
    std::set<Cell> nodes;
    for (const auto n : h.nodes()) nodes.insert(h.shape().cell(n));
    EXPECT_EQ(nodes, oracle::full_blocks(map)) << "seed " << seed;
    std::set<mstc::NodeId> covered;
    for (const auto n : h.nodes()) {
      for (const auto c : h.children(n)) {
        EXPECT_TRUE(covered.insert(c).second);
        EXPECT_EQ(h.owner(c), n);
      }
    }
    for (const auto n : h.nodes()) {
      for (const auto& a : h.arcs(n)) {
        EXPECT_GE(a.slope, map.bounds.min_deg);
        EXPECT_LE(a.slope, map.bounds.max_deg);
      }
    }
  }
}

TEST(SpanningGraph, EdgeSlopeIsMeanOfCrossings) {
  Scene s = Scene::empty(4, 2);
  s.elevation.emplace(8, 0.0);
  // Crossing edges (1,0)-(2,0) and (1,1)-(2,1) rise 0.1 and 0.3.
  for (int x = 2; x < 4; ++x) {
    (*s.elevation)[s.shape().id({x, 0})] = 0.1;
    (*s.elevation)[s.shape().id({x, 1})] = 0.3;
  }
  const auto map = mstc::steepness_filter(s, 25.0);
  const auto h = mstc::build_spanning_graph(map, PlannerConfig{});
  ASSERT_EQ(h.edge_count(), 1u);
  const double expect = 0.5 * (oracle::slope_deg(s, {1, 0}, {2, 0}) + oracle::slope_deg(s, {1, 1}, {2, 1}));
  EXPECT_NEAR(h.arcs(0).front().slope, expect, 1e-12);
}

TEST(ShortestPath, SourceOnlyAndCorridor) {
  const auto g = mstc::build_covering_graph(mstc::initial_map(Scene::empty(6, 1)), unweighted());
  const auto same = mstc::shortest_path(g, 2, 2);
  EXPECT_EQ(same.path, std::vector<mstc::NodeId>{2});
  EXPECT_EQ(same.cost, 0.0);
  const auto r = mstc::shortest_path(g, 0, 5);
  EXPECT_EQ(r.cost, 5.0);
  EXPECT_EQ(r.path.size(), 6u);
  EXPECT_THROW(mstc::shortest_path(g, 0, 99), mstc::Error);
}

TEST(ShortestPath, DisconnectedIsInternalError) {
  Scene s = Scene::empty(3, 1);
  s.block({1, 0});
  const auto g = mstc::build_covering_graph(mstc::initial_map(s), unweighted());
  EXPECT_THROW(mstc::shortest_path(g, 0, 2), mstc::Error);
}

TEST(ShortestPath, MatchesBellmanFord) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scene s = testing_support::rough_dem(seed + 300, 8, 8, 1.0);
    const auto g = mstc::build_covering_graph(mstc::steepness_filter(s, 25.0), PlannerConfig{});
    const auto nodes = g.nodes();
    const auto src = nodes[seed % nodes.size()];
    const auto tree = mstc::dijkstra(g, src);
    const auto ref = oracle::bellman_ford(g, src);
    for (const auto n : nodes) {
      if (std::isinf(ref[n])) {
        EXPECT_FALSE(tree.reachable(n));
        continue;
      }
      EXPECT_NEAR(tree.dist[n], ref[n], 1e-9);
      const auto path = tree.path_to(n);
      EXPECT_NEAR(mstc::walk_cost(g, [&] {
                    std::vector<Cell> cells;
                    for (const auto id : path) cells.push_back(g.shape().cell(id));
                    return cells;
                  }()),
                  ref[n], 1e-9);
    }
  }
}

TEST(ShortestPath, TriangleInequalityAndScaleInvariance) {
  const Scene s = testing_support::rough_dem(77, 10, 10, 1.0);
  const auto map = mstc::steepness_filter(s, 25.0);
  PlannerConfig scaled;
  scaled.alpha *= 3.0;
  scaled.beta *= 3.0;
  const auto g = mstc::build_covering_graph(map, PlannerConfig{});
  const auto g3 = mstc::build_covering_graph(map, scaled);
  const auto nodes = g.nodes();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto a = nodes[rng() % nodes.size()];
    const auto b = nodes[rng() % nodes.size()];
    const auto c = nodes[rng() % nodes.size()];
    const auto da = mstc::dijkstra(g, a);
    const auto db = mstc::dijkstra(g, b);
    if (!da.reachable(b) || !db.reachable(c)) continue;
    EXPECT_LE(da.dist[c], da.dist[b] + db.dist[c] + 1e-9);
    const auto p1 = mstc::shortest_path(g, a, c);
    const auto p3 = mstc::shortest_path(g3, a, c);
    EXPECT_EQ(p1.path, p3.path);
    EXPECT_NEAR(p3.cost, 3.0 * p1.cost, 1e-9);
  }
}

TEST(WalkCost, HandBuiltLoopWithDiagonals) {
  const auto g = mstc::build_covering_graph(mstc::initial_map(Scene::empty(4, 2)), unweighted());
  // Six unit hops and two in-block diagonals, back to the start.
  const std::vector<Cell> loop{{0, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 0}, {2, 0}, {1, 0}, {0, 1}, {0, 0}};
  EXPECT_DOUBLE_EQ(mstc::walk_cost(g, loop), 6.0 + 2.0 * std::numbers::sqrt2);
  EXPECT_THROW(mstc::walk_cost(g, {{0, 0}, {2, 0}}), mstc::Error);
}

TEST(GraphJson, DumpsNodesAndEdges) {
  const auto g = mstc::build_covering_graph(mstc::initial_map(Scene::empty(2, 2)), unweighted());
  const auto doc = mstc::graph_to_json(g);
  EXPECT_EQ(doc.at("nodes").size(), 4u);
  EXPECT_EQ(doc.at("edges").size(), 6u);
}

}  // namespace
