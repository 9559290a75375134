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

// Plan JSON: per robot the depot, serviced path, approach/return legs,
// transits and refill events with their costs; globally the max and total
// weight and the optimizer iteration count. Cells are [x, y] pairs.

#ifndef MSTC_PLAN_IO_HPP_
#define MSTC_PLAN_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstc/planner.hpp"

namespace mstc {

inline constexpr const char* kPlanFormat = "mstc-plan/1";

namespace detail {

inline nlohmann::json cells_json(GridShape shape, const std::vector<NodeId>& ids) {
  nlohmann::json arr = nlohmann::json::array();
  for (const NodeId n : ids) {
    const Cell c = shape.cell(n);
    arr.push_back({c.x, c.y});
  }
  return arr;
}

inline nlohmann::json cell_json(GridShape shape, NodeId n) {
  const Cell c = shape.cell(n);
  return {c.x, c.y};
}

inline std::vector<Cell> parse_cells(const nlohmann::json& arr) {
  std::vector<Cell> out;
  out.reserve(arr.size());
  for (const auto& c : arr) out.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return out;
}

}  // namespace detail

inline nlohmann::json plan_to_json(const Planner& planner, const PlanResult& result, std::uint64_t seed) {
  const GridShape shape = planner.scene().shape();
  nlohmann::json doc;
  doc["format"] = kPlanFormat;
  doc["algorithm"] = to_string(result.algorithm);
  doc["robots"] = result.robots;
  doc["capacity"] = result.capacity.to_string();
  doc["seed"] = seed;
  doc["config"] = {{"alpha", planner.config().alpha},
                   {"beta", planner.config().beta},
                   {"slope_threshold", planner.config().slope_threshold}};
  nlohmann::json depots = nlohmann::json::array();
  for (int r = 0; r < result.robots; ++r) {
    depots.push_back({planner.scene().depots[r].x, planner.scene().depots[r].y});
  }
  doc["scene"] = {{"width", shape.width()}, {"height", shape.height()}, {"depots", depots}};
  doc["loop_length"] = planner.loop().size();
  doc["free_cells"] = planner.traversability().free_count();
  doc["coverage_ratio"] = planner.coverage_ratio();
  doc["iterations"] = result.iterations;
  doc["sub_partitions"] = result.sub_partitions;
  doc["max_weight"] = result.max_weight();
  doc["total_weight"] = result.total_weight();
  doc["plans"] = nlohmann::json::array();
  for (const RobotPlan& p : result.plans) {
    nlohmann::json r;
    r["robot"] = p.robot;
    r["depot"] = detail::cell_json(shape, p.depot);
    r["weight"] = p.weight;
    r["trips"] = p.trips;
    r["approach_cost"] = p.approach_cost;
    r["coverage_cost"] = p.coverage_cost;
    r["return_cost"] = p.return_cost;
    r["path"] = detail::cells_json(shape, p.path);
    r["approach"] = detail::cells_json(shape, p.approach);
    r["return"] = detail::cells_json(shape, p.ret);
    r["transits"] = nlohmann::json::array();
    for (const Transit& t : p.transits) {
      r["transits"].push_back({{"index", t.after}, {"cost", t.cost}, {"path", detail::cells_json(shape, t.path)}});
    }
    r["refills"] = nlohmann::json::array();
    for (const RefillEvent& e : p.refills) {
      r["refills"].push_back({{"index", e.after},
                              {"node", detail::cell_json(shape, e.node)},
                              {"trip_cost", e.cost},
                              {"outbound", detail::cells_json(shape, e.outbound)},
                              {"inbound", detail::cells_json(shape, e.inbound)}});
    }
    doc["plans"].push_back(std::move(r));
  }
  return doc;
}

/// Parsed plan file, independent of any planner state.
struct PlanDocument {
  struct Leg {
    std::size_t index = 0;
    double cost = 0.0;
    std::vector<Cell> path;
  };
  struct Refill {
    std::size_t index = 0;
    Cell node;
    double trip_cost = 0.0;
    std::vector<Cell> outbound;
    std::vector<Cell> inbound;
  };
  struct Robot {
    std::size_t robot = 0;
    Cell depot;
    double weight = 0.0;
    std::size_t trips = 1;
    std::vector<Cell> path;
    std::vector<Cell> approach;
    std::vector<Cell> ret;
    std::vector<Leg> transits;
    std::vector<Refill> refills;
  };

  std::string algorithm;
  int robots = 0;
  std::string capacity;
  int width = 0;
  int height = 0;
  std::vector<Cell> depots;
  std::size_t loop_length = 0;
  double coverage_ratio = 0.0;
  std::size_t iterations = 0;
  double max_weight = 0.0;
  double total_weight = 0.0;
  std::vector<Robot> plans;
};

inline PlanDocument parse_plan(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kPlanFormat) {
    throw Error(std::string("plan: not a ") + kPlanFormat + " document");
  }
  PlanDocument p;
  try {
    p.algorithm = doc.at("algorithm").get<std::string>();
    p.robots = doc.at("robots").get<int>();
    p.capacity = doc.at("capacity").get<std::string>();
    p.width = doc.at("scene").at("width").get<int>();
    p.height = doc.at("scene").at("height").get<int>();
    p.depots = detail::parse_cells(doc.at("scene").at("depots"));
    p.loop_length = doc.at("loop_length").get<std::size_t>();
    p.coverage_ratio = doc.at("coverage_ratio").get<double>();
    p.iterations = doc.at("iterations").get<std::size_t>();
    p.max_weight = doc.at("max_weight").get<double>();
    p.total_weight = doc.at("total_weight").get<double>();
    for (const auto& r : doc.at("plans")) {
      PlanDocument::Robot robot;
      robot.robot = r.at("robot").get<std::size_t>();
      robot.depot = detail::parse_cells(nlohmann::json::array({r.at("depot")})).front();
      robot.weight = r.at("weight").get<double>();
      robot.trips = r.at("trips").get<std::size_t>();
      robot.path = detail::parse_cells(r.at("path"));
      robot.approach = detail::parse_cells(r.at("approach"));
      robot.ret = detail::parse_cells(r.at("return"));
      for (const auto& t : r.at("transits")) {
        robot.transits.push_back({t.at("index").get<std::size_t>(), t.at("cost").get<double>(),
                                  detail::parse_cells(t.at("path"))});
      }
      for (const auto& e : r.at("refills")) {
        PlanDocument::Refill f;
        f.index = e.at("index").get<std::size_t>();
        f.node = {e.at("node").at(0).get<int>(), e.at("node").at(1).get<int>()};
        f.trip_cost = e.at("trip_cost").get<double>();
        f.outbound = detail::parse_cells(e.at("outbound"));
        f.inbound = detail::parse_cells(e.at("inbound"));
        robot.refills.push_back(std::move(f));
      }
      p.plans.push_back(std::move(robot));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("plan: ") + e.what());
  }
  return p;
}

inline PlanDocument load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open plan file " + path.string());
  try {
    return parse_plan(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("plan " + path.string() + ": " + e.what());
  }
}

/// Sum of covering-graph edge weights along consecutive cells.
inline double walk_cost(const CoveringGraph& g, const std::vector<Cell>& cells) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const auto w = g.weight(g.shape().id(cells[i]), g.shape().id(cells[i + 1]));
    if (!w) throw Error("walk_cost: consecutive cells are not joined by a covering edge");
    s += *w;
  }
  return s;
}

/// Robot weight recomputed from the emitted legs alone.
inline double recompute_weight(const CoveringGraph& g, const PlanDocument::Robot& r) {
  double w = walk_cost(g, r.approach) + walk_cost(g, r.ret);
  std::size_t t = 0;
  for (std::size_t i = 0; i + 1 < r.path.size(); ++i) {
    if (t < r.transits.size() && r.transits[t].index == i) {
      w += walk_cost(g, r.transits[t].path);
      ++t;
    } else {
      w += walk_cost(g, {r.path[i], r.path[i + 1]});
    }
  }
  for (const auto& f : r.refills) w += walk_cost(g, f.outbound) + walk_cost(g, f.inbound);
  return w;
}

/// Writes via a temporary file and rename so readers never see partial output.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mstc

#endif  // MSTC_PLAN_IO_HPP_
