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

// Front-end operations behind the mstc command-line tool. Each sweep cell
// (algorithm, k, c) is independent; results are collected and reported in
// the order the lists were given, and every file is written atomically.

#ifndef MSTC_COMMANDS_HPP_
#define MSTC_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstc/plan_io.hpp"
#include "mstc/planner.hpp"
#include "mstc/scenegen.hpp"
#include "mstc/svg.hpp"

namespace mstc {

struct RunSpec {
  std::filesystem::path scene;
  std::vector<Algorithm> algorithms{Algorithm::kBalanced};
  std::vector<int> robots{1};
  std::vector<Capacity> capacities{Capacity::unbounded()};
  double alpha = 1.0 / 3.0;
  double beta = 2.0 / 3.0;
  double slope_threshold = 25.0;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";

  PlannerConfig config() const {
    PlannerConfig c;
    c.alpha = alpha;
    c.beta = beta;
    c.slope_threshold = slope_threshold;
    return c;
  }

  void validate() const {
    if (scene.empty()) throw Error("no scene given");
    if (algorithms.empty()) throw Error("no algorithm selected");
    if (robots.empty()) throw Error("no robot count given");
    if (capacities.empty()) throw Error("no capacity given");
    for (const int k : robots) {
      if (k < 1) throw Error("robot counts must be positive");
    }
    config().validate();
  }
};

struct SummaryRow {
  Algorithm algorithm = Algorithm::kBalanced;
  int robots = 0;
  Capacity capacity = Capacity::unbounded();
  double max_weight = 0.0;
  double total_weight = 0.0;
  double coverage_ratio = 0.0;
  std::size_t iterations = 0;
  std::string file;

  std::string to_line() const {
    std::ostringstream os;
    os << std::setprecision(10) << to_string(algorithm) << " k=" << robots << " c=" << capacity.to_string()
       << " max_weight=" << max_weight << " total_weight=" << total_weight << " coverage_ratio=" << coverage_ratio
       << " iterations=" << iterations << " file=" << file;
    return os.str();
  }
};

inline std::string plan_file_name(Algorithm a, int k, Capacity c) {
  return "plan_" + to_string(a) + "_k" + std::to_string(k) + "_c" + c.to_string() + ".json";
}

/// Serialized plan JSON exactly as written to disk.
inline std::string plan_text(const Planner& planner, const PlanResult& result, std::uint64_t seed) {
  return plan_to_json(planner, result, seed).dump(1) + "\n";
}

inline std::vector<SummaryRow> cmd_plan(const RunSpec& spec, std::ostream& log) {
  spec.validate();
  const Planner planner(load_scene(spec.scene), spec.config());
  std::vector<SummaryRow> rows;
  nlohmann::json summary = nlohmann::json::array();
  for (const Algorithm a : spec.algorithms) {
    for (const int k : spec.robots) {
      for (const Capacity c : spec.capacities) {
        const PlanResult r = planner.run(a, k, c);
        SummaryRow row{a, k, c, r.max_weight(), r.total_weight(), planner.coverage_ratio(), r.iterations,
                       plan_file_name(a, k, c)};
        write_file_atomic(spec.out / row.file, plan_text(planner, r, spec.seed));
        log << row.to_line() << "\n";
        summary.push_back({{"algorithm", to_string(a)},
                           {"robots", k},
                           {"capacity", c.to_string()},
                           {"max_weight", row.max_weight},
                           {"total_weight", row.total_weight},
                           {"coverage_ratio", row.coverage_ratio},
                           {"iterations", row.iterations},
                           {"file", row.file}});
        rows.push_back(std::move(row));
      }
    }
  }
  write_file_atomic(spec.out / "summary.json", summary.dump(1) + "\n");
  return rows;
}

inline std::vector<ComparisonReport> cmd_compare(const RunSpec& spec, std::ostream& log) {
  spec.validate();
  if (spec.algorithms.size() < 2) throw Error("compare needs at least two algorithms (the first is the baseline)");
  const Planner planner(load_scene(spec.scene), spec.config());
  std::vector<ComparisonReport> reports;
  for (const int k : spec.robots) {
    for (const Capacity c : spec.capacities) {
      ComparisonReport rep;
      rep.scene = spec.scene.filename().string();
      rep.seed = spec.seed;
      rep.robots = k;
      rep.capacity = c;
      rep.baseline = to_string(spec.algorithms.front());
      double base = 0.0;
      for (std::size_t i = 0; i < spec.algorithms.size(); ++i) {
        const PlanResult r = planner.run(spec.algorithms[i], k, c);
        ComparisonRow row{to_string(spec.algorithms[i]), r.max_weight(), r.total_weight(), std::nullopt};
        if (i == 0) {
          base = row.max_weight;
        } else {
          row.reduction_ratio = reduction_ratio(base, row.max_weight);
        }
        rep.rows.push_back(std::move(row));
      }
      const std::string name = "compare_k" + std::to_string(k) + "_c" + c.to_string() + ".json";
      write_file_atomic(spec.out / name, rep.to_json().dump(1) + "\n");
      log << rep.to_text() << "\n";
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

/// Renders a scene, with an optional plan overlaid, to an SVG file.
inline void cmd_render(const std::filesystem::path& scene_path, const std::optional<std::filesystem::path>& plan_path,
                       const std::filesystem::path& out) {
  const Scene scene = load_scene(scene_path);
  std::optional<PlanDocument> plan;
  if (plan_path) plan = load_plan(*plan_path);
  write_file_atomic(out, render_svg(scene, plan));
}

enum class SceneKind { kBlocked, kRandom, kField };

inline SceneKind parse_scene_kind(const std::string& s) {
  if (s == "blocked") return SceneKind::kBlocked;
  if (s == "random") return SceneKind::kRandom;
  if (s == "field") return SceneKind::kField;
  throw Error("unknown scene kind '" + s + "' (expected blocked, random or field)");
}

struct GenSpec {
  SceneKind kind = SceneKind::kRandom;
  std::uint64_t seed = 0;
  int size = 0;    // 0 = kind default
  int robots = 0;  // 0 = kind default
  DepotLayout layout = DepotLayout::kScattered;
  std::filesystem::path out = "scene";
};

inline Scene generate_scene(const GenSpec& g) {
  switch (g.kind) {
    case SceneKind::kBlocked:
      return blocked_terrain_scene(g.robots ? g.robots : 4);
    case SceneKind::kRandom: {
      RandomSceneOptions o;
      o.width = o.height = g.size ? g.size : 10;
      o.robots = g.robots ? g.robots : 8;
      o.layout = g.layout;
      return random_scene(g.seed, o);
    }
    case SceneKind::kField: {
      FieldSceneOptions o;
      if (g.size) o.size = g.size;
      if (g.robots) o.robots = g.robots;
      return field_scene(g.seed, o);
    }
  }
  throw Error("unknown scene kind");
}

inline std::filesystem::path cmd_gen_scene(const GenSpec& g) { return write_scene(generate_scene(g), g.out); }

}  // namespace mstc

#endif  // MSTC_COMMANDS_HPP_
