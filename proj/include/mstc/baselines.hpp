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

// Depot-keyed MSTC baselines and the reduction-ratio comparison.
//
// Non-backtracking MSTC cuts the loop at the depots: each robot covers from
// its own depot up to the next robot's depot. The backtracking variant lets
// the robot behind each inter-depot arc take over a suffix of it, covered in
// reverse after a trip home.

#ifndef MSTC_BASELINES_HPP_
#define MSTC_BASELINES_HPP_

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstc/partition.hpp"

namespace mstc {

struct DepotOrder {
  std::vector<std::size_t> robots;     // robots sorted by loop position
  std::vector<std::size_t> positions;  // matching loop indices
};

inline DepotOrder depots_on_loop(const CoverageLoop& loop, const std::vector<NodeId>& depots) {
  DepotOrder order;
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t r = 0; r < depots.size(); ++r) {
    const auto idx = loop.index_of(depots[r]);
    if (!idx) {
      const Cell c = loop.shape.cell(depots[r]);
      throw Error("depot of robot " + std::to_string(r + 1) + " at (" + std::to_string(c.x) + "," +
                  std::to_string(c.y) + ") is not on the coverage loop");
    }
    pos.emplace_back(*idx, r);
  }
  std::sort(pos.begin(), pos.end());
  for (const auto& [p, r] : pos) {
    order.positions.push_back(p);
    order.robots.push_back(r);
  }
  return order;
}

struct BaselineResult {
  PartitionSet partition;  // keys at the depots (segments hold the arcs)
  std::vector<RobotPlan> plans;
};

/// MSTC without backtracking.
inline BaselineResult mstc_nb(const CoveringGraph& g, const CoverageLoop& loop,
                              const std::vector<ShortestPathTree>& depot_trees, Capacity capacity) {
  std::vector<NodeId> depots;
  for (const auto& t : depot_trees) depots.push_back(t.source);
  const DepotOrder order = depots_on_loop(loop, depots);
  BaselineResult out;
  out.partition.loop_size = loop.size();
  out.partition.keys = order.positions;
  Assignment robot_of = order.robots;
  out.plans = make_plans(g, loop, depot_trees, out.partition, robot_of, capacity);
  out.partition.weights.resize(order.robots.size());
  for (std::size_t i = 0; i < robot_of.size(); ++i) out.partition.weights[i] = out.plans[robot_of[i]].weight;
  return out;
}

namespace detail {

/// Robot cost when it covers `fwd` cells forward from its depot position and
/// then, after a detour home, `back` cells backwards from the cell behind it.
inline double backtrack_cost(const CostModel& model, std::size_t robot, std::size_t pos,
                             std::size_t fwd, std::size_t back) {
  const std::size_t L = model.loop_size();
  if (back == 0) return model.arc_cost(pos, fwd, robot);
  const std::size_t total = fwd + back;
  // Service order: pos .. pos+fwd-1, then pos-1, pos-2, ..., pos-back.
  auto service = [&](std::size_t s) {
    return s < fwd ? (pos + s) % L : (pos + L * 2 - (s - fwd) - 1) % L;
  };
  double cost = model.depot_distance(robot, service(0)) + model.hop_sum(pos, fwd - 1) +
                model.depot_distance(robot, service(fwd - 1)) + model.depot_distance(robot, service(fwd)) +
                model.hop_sum((pos + L - back) % L, back - 1) + model.depot_distance(robot, service(total - 1));
  const Capacity cap = model.capacity();
  if (cap.bounded()) {
    const auto c = static_cast<std::size_t>(cap.value());
    for (std::size_t served = c; served < total; served += c) cost += 2.0 * model.depot_distance(robot, service(served - 1));
  }
  return cost;
}

}  // namespace detail

struct BacktrackResult {
  std::vector<std::size_t> forward;   // per arc (in depot loop order): cells its owner covers forward
  std::vector<RobotPlan> plans;
  std::size_t passes = 0;
};

/// MSTC with backtracking. Each inter-depot arc is split between the robot
/// at its start (forward) and the robot at its end (backwards); split points
/// are chosen arc by arc to minimise the larger of the two robots' costs,
/// sweeping until no split changes.
inline BacktrackResult mstc_bo(const CoveringGraph& g, const CoverageLoop& loop,
                               const std::vector<ShortestPathTree>& depot_trees, Capacity capacity,
                               std::size_t max_passes = 64) {
  std::vector<NodeId> depots;
  for (const auto& t : depot_trees) depots.push_back(t.source);
  const DepotOrder order = depots_on_loop(loop, depots);
  const CostModel model = CostModel::from_graph(loop, depot_trees, capacity);
  const std::size_t k = order.robots.size();
  const std::size_t L = loop.size();

  std::vector<std::size_t> len(k);
  for (std::size_t i = 0; i < k; ++i) {
    len[i] = k == 1 ? L : (order.positions[(i + 1) % k] + L - order.positions[i]) % L;
  }
  BacktrackResult out;
  out.forward = len;

  // Robot at order slot j covers forward[j] of arc j and the tail of arc j-1.
  auto cost_of = [&](std::size_t j, const std::vector<std::size_t>& fwd) {
    const std::size_t prev = (j + k - 1) % k;
    const std::size_t back = k == 1 ? 0 : len[prev] - fwd[prev];
    return detail::backtrack_cost(model, order.robots[j], order.positions[j], fwd[j], back);
  };

  if (k > 1) {
    bool changed = true;
    while (changed && out.passes < max_passes) {
      changed = false;
      ++out.passes;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t next = (i + 1) % k;
        std::vector<std::size_t> fwd = out.forward;
        double best = std::max(cost_of(i, fwd), cost_of(next, fwd));
        std::size_t best_f = fwd[i];
        for (std::size_t f = len[i]; f >= 1; --f) {
          fwd[i] = f;
          const double m = std::max(cost_of(i, fwd), cost_of(next, fwd));
          if (m < best - 1e-9 * std::max(1.0, best)) {
            best = m;
            best_f = f;
          }
        }
        if (best_f != out.forward[i]) {
          out.forward[i] = best_f;
          changed = true;
        }
      }
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t prev = (j + k - 1) % k;
    const std::size_t back = k == 1 ? 0 : len[prev] - out.forward[prev];
    const std::size_t pos = order.positions[j];
    std::vector<NodeId> services;
    for (std::size_t s = 0; s < out.forward[j]; ++s) services.push_back(loop.at(pos + s));
    for (std::size_t s = 1; s <= back; ++s) services.push_back(loop.at(pos + L - s));
    std::set<std::size_t> home;
    if (back > 0) home.insert(out.forward[j] - 1);
    const std::size_t robot = order.robots[j];
    out.plans.push_back(build_robot_plan(g, depot_trees[robot], robot, std::move(services), capacity, home));
  }
  std::sort(out.plans.begin(), out.plans.end(),
            [](const RobotPlan& a, const RobotPlan& b) { return a.robot < b.robot; });
  return out;
}

inline double reduction_ratio(double base, double candidate) {
  if (!(base > 0.0)) throw Error("reduction_ratio: baseline weight must be positive");
  return (base - candidate) / base;
}

struct ComparisonRow {
  std::string algorithm;
  double max_weight = 0.0;
  double total_weight = 0.0;
  std::optional<double> reduction_ratio;  // vs the baseline row; absent for the baseline itself
};

struct ComparisonReport {
  std::string scene;
  std::uint64_t seed = 0;
  int robots = 0;
  Capacity capacity = Capacity::unbounded();
  std::string baseline;
  std::vector<ComparisonRow> rows;

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["scene"] = scene;
    doc["seed"] = seed;
    doc["robots"] = robots;
    doc["capacity"] = capacity.to_string();
    doc["baseline"] = baseline;
    doc["rows"] = nlohmann::json::array();
    for (const ComparisonRow& r : rows) {
      nlohmann::json row{{"algorithm", r.algorithm}, {"max_weight", r.max_weight}, {"total_weight", r.total_weight}};
      row["reduction_ratio"] = r.reduction_ratio ? nlohmann::json(*r.reduction_ratio) : nlohmann::json(nullptr);
      doc["rows"].push_back(row);
    }
    // Multi-robot forest coverage is not implemented.
    doc["mfc"] = "unavailable";
    doc["notes"] = "mstc-bo splits each inter-depot arc at the point minimising the larger of its two robots' costs";
    return doc;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "k=" << robots << " c=" << capacity.to_string() << " baseline=" << baseline << "\n";
    os << std::left << std::setw(10) << "algorithm" << std::right << std::setw(16) << "max_weight"
       << std::setw(16) << "total_weight" << std::setw(12) << "reduction" << "\n";
    os << std::fixed << std::setprecision(4);
    for (const ComparisonRow& r : rows) {
      os << std::left << std::setw(10) << r.algorithm << std::right << std::setw(16) << r.max_weight
         << std::setw(16) << r.total_weight << std::setw(12);
      if (r.reduction_ratio) {
        os << *r.reduction_ratio;
      } else {
        os << "-";
      }
      os << "\n";
    }
    os << std::left << std::setw(10) << "mfc" << std::right << std::setw(16) << "n/a" << std::setw(16) << "n/a"
       << std::setw(12) << "n/a" << "\n";
    return os.str();
  }
};

}  // namespace mstc

#endif  // MSTC_BASELINES_HPP_
