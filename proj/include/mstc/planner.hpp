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

#ifndef MSTC_PLANNER_HPP_
#define MSTC_PLANNER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "mstc/baselines.hpp"
#include "mstc/graph.hpp"
#include "mstc/partition.hpp"
#include "mstc/stc.hpp"
#include "mstc/terrain.hpp"

namespace mstc {

enum class Algorithm { kMstcNb, kMstcBo, kNaive, kBalanced };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kMstcNb:
      return "mstc-nb";
    case Algorithm::kMstcBo:
      return "mstc-bo";
    case Algorithm::kNaive:
      return "naive";
    case Algorithm::kBalanced:
      return "balanced";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "mstc-nb") return Algorithm::kMstcNb;
  if (s == "mstc-bo") return Algorithm::kMstcBo;
  if (s == "naive") return Algorithm::kNaive;
  if (s == "balanced") return Algorithm::kBalanced;
  throw Error("unknown algorithm '" + std::string(s) + "' (expected mstc-nb, mstc-bo, naive or balanced)");
}

struct PlanResult {
  Algorithm algorithm = Algorithm::kBalanced;
  int robots = 0;
  Capacity capacity = Capacity::unbounded();
  std::vector<RobotPlan> plans;
  std::size_t iterations = 0;
  std::size_t sub_partitions = 0;

  double max_weight() const { return mstc::max_weight(plans); }
  double total_weight() const { return mstc::total_weight(plans); }
};

/// Scene preprocessing (traversability, graphs, MST, coverage loop) done once,
/// then any number of (algorithm, k, c) runs against it.
class Planner {
 public:
  Planner(Scene scene, PlannerConfig config) : scene_(std::move(scene)), config_(config) {
    scene_.validate();
    config_.validate();
    map_ = build_traversability(scene_, config_.slope_threshold);
    covering_ = build_covering_graph(map_, config_);
    const SpanningGraph full = build_spanning_graph(map_, config_);
    const NodeId start = scene_.shape().id(scene_.depots.front());
    const NodeId root = full.owner(start);
    if (root == kNoNode) {
      throw Error("depot of robot 1 is not inside a fully traversable 2x2 block");
    }
    spanning_ = full.component(root);
    tree_ = minimum_spanning_tree(spanning_, root);
    loop_ = spiral_stc_loop(covering_, spanning_, tree_, start);
    for (const Cell d : scene_.depots) depot_trees_.push_back(dijkstra(covering_, scene_.shape().id(d)));
  }

  const Scene& scene() const { return scene_; }
  const PlannerConfig& config() const { return config_; }
  const TraversabilityMap& traversability() const { return map_; }
  const CoveringGraph& covering() const { return covering_; }
  const SpanningGraph& spanning() const { return spanning_; }
  const SpanningTree& tree() const { return tree_; }
  const CoverageLoop& loop() const { return loop_; }
  const std::vector<ShortestPathTree>& depot_trees() const { return depot_trees_; }

  /// Covered cells over traversable cells.
  double coverage_ratio() const {
    const std::size_t free = map_.free_count();
    return free ? static_cast<double>(loop_.size()) / static_cast<double>(free) : 0.0;
  }

  std::vector<ShortestPathTree> trees_for(int k) const {
    check_robots(k);
    return {depot_trees_.begin(), depot_trees_.begin() + k};
  }

  CostModel cost_model(int k, Capacity c) const { return CostModel::from_graph(loop_, trees_for(k), c); }

  PlanResult run(Algorithm algorithm, int k, Capacity c) const {
    check_robots(k);
    PlanResult out;
    out.algorithm = algorithm;
    out.robots = k;
    out.capacity = c;
    const auto trees = trees_for(k);
    const auto uk = static_cast<std::size_t>(k);
    switch (algorithm) {
      case Algorithm::kMstcNb:
        out.plans = mstc_nb(covering_, loop_, trees, c).plans;
        out.sub_partitions = uk;
        break;
      case Algorithm::kMstcBo: {
        BacktrackResult r = mstc_bo(covering_, loop_, trees, c);
        out.plans = std::move(r.plans);
        out.iterations = r.passes;
        out.sub_partitions = uk;
        break;
      }
      case Algorithm::kNaive: {
        const CostModel model = CostModel::from_graph(loop_, trees, c);
        const PartitionResult r = naive_mstc(model, uk);
        out.plans = make_plans(covering_, loop_, trees, r.partition, r.robot_of, c);
        out.sub_partitions = uk;
        break;
      }
      case Algorithm::kBalanced: {
        const CostModel model = CostModel::from_graph(loop_, trees, c);
        const CapacityResult r = capacity_partition(model, uk);
        out.plans = make_plans(covering_, loop_, trees, r.merged.partition, r.merged.robot_of, c);
        out.iterations = r.merged.iterations;
        out.sub_partitions = r.sub_partitions;
        break;
      }
    }
    return out;
  }

 private:
  void check_robots(int k) const {
    if (k < 1) throw Error("need at least one robot");
    if (static_cast<std::size_t>(k) > scene_.depots.size()) {
      throw Error("k=" + std::to_string(k) + " robots but the scene has only " +
                  std::to_string(scene_.depots.size()) + " depots");
    }
    if (static_cast<std::size_t>(k) > loop_.size()) {
      throw Error("k=" + std::to_string(k) + " exceeds the coverage loop length " + std::to_string(loop_.size()));
    }
  }

  Scene scene_;
  PlannerConfig config_;
  TraversabilityMap map_;
  CoveringGraph covering_;
  SpanningGraph spanning_;
  SpanningTree tree_;
  CoverageLoop loop_;
  std::vector<ShortestPathTree> depot_trees_;
};

}  // namespace mstc

#endif  // MSTC_PLANNER_HPP_
