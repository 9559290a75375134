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

// mstc: multi-robot coverage planning from the command line.
//
//   mstc gen-scene --kind field --seed 7 --out scenes/field7
//   mstc plan --scene scenes/field7/scene.json --algo balanced --robots 8 --capacity 400 --out out
//   mstc compare --scene ... --algo mstc-nb --algo naive --algo balanced --robots 4 --robots 8
//   mstc render --scene ... --plan out/plan_balanced_k8_c400.json --out out/plan.svg

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mstc.hpp"

namespace {

struct RawRunArgs {
  std::string scene;
  std::vector<std::string> algos;
  std::vector<int> robots;
  std::vector<std::string> capacities;
  double alpha = 1.0 / 3.0;
  double beta = 2.0 / 3.0;
  double slope = 25.0;
  std::uint64_t seed = 0;
  std::string out = "out";

  mstc::RunSpec to_spec(std::vector<std::string> default_algos) const {
    mstc::RunSpec s;
    s.scene = scene;
    s.algorithms.clear();
    for (const auto& a : algos.empty() ? default_algos : algos) s.algorithms.push_back(mstc::parse_algorithm(a));
    if (!robots.empty()) s.robots = robots;
    if (!capacities.empty()) {
      s.capacities.clear();
      for (const auto& c : capacities) s.capacities.push_back(mstc::Capacity::parse(c));
    }
    s.alpha = alpha;
    s.beta = beta;
    s.slope_threshold = slope;
    s.seed = seed;
    s.out = out;
    return s;
  }
};

void add_run_options(CLI::App* app, RawRunArgs& a) {
  app->add_option("--scene", a.scene, "Scene JSON file")->required();
  app->add_option("--algo", a.algos, "mstc-nb | mstc-bo | naive | balanced (repeatable)");
  app->add_option("--robots", a.robots, "Number of robots k (repeatable)");
  app->add_option("--capacity", a.capacities, "Workload capacity c, integer or inf (repeatable)");
  app->add_option("--alpha", a.alpha, "Distance weight")->capture_default_str();
  app->add_option("--beta", a.beta, "Slope weight")->capture_default_str();
  app->add_option("--slope-threshold", a.slope, "Maximum traversable slope in degrees")->capture_default_str();
  app->add_option("--seed", a.seed, "Seed recorded in the outputs")->capture_default_str();
  app->add_option("--out", a.out, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot coverage path planning on weighted terrain"};
  app.require_subcommand(1);

  RawRunArgs plan_args;
  CLI::App* plan = app.add_subcommand("plan", "Plan paths for every (algorithm, k, c) combination");
  add_run_options(plan, plan_args);

  RawRunArgs compare_args;
  CLI::App* compare = app.add_subcommand("compare", "Compare algorithms against the first-listed baseline");
  add_run_options(compare, compare_args);

  std::string render_scene;
  std::string render_plan;
  std::string render_out = "plan.svg";
  CLI::App* render = app.add_subcommand("render", "Render a scene and optional plan to SVG");
  render->add_option("--scene", render_scene, "Scene JSON file")->required();
  render->add_option("--plan", render_plan, "Plan JSON file");
  render->add_option("--out", render_out, "SVG output file")->capture_default_str();

  std::string gen_kind = "random";
  std::string gen_layout = "scattered";
  mstc::GenSpec gen;
  std::string gen_out = "scene";
  CLI::App* gen_scene = app.add_subcommand("gen-scene", "Generate a synthetic scene");
  gen_scene->add_option("--kind", gen_kind, "blocked | random | field")->capture_default_str();
  gen_scene->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_scene->add_option("--size", gen.size, "Grid side in covering cells (0 = kind default)");
  gen_scene->add_option("--robots", gen.robots, "Number of depots (0 = kind default)");
  gen_scene->add_option("--layout", gen_layout, "Depot layout for random scenes: clustered | scattered")
      ->capture_default_str();
  gen_scene->add_option("--out", gen_out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      mstc::cmd_plan(plan_args.to_spec({"balanced"}), std::cout);
    } else if (compare->parsed()) {
      mstc::cmd_compare(compare_args.to_spec({"mstc-nb", "naive", "balanced"}), std::cout);
    } else if (render->parsed()) {
      std::optional<std::filesystem::path> p;
      if (!render_plan.empty()) p = render_plan;
      mstc::cmd_render(render_scene, p, render_out);
      std::cout << render_out << "\n";
    } else if (gen_scene->parsed()) {
      gen.kind = mstc::parse_scene_kind(gen_kind);
      if (gen_layout == "clustered") {
        gen.layout = mstc::DepotLayout::kClustered;
      } else if (gen_layout != "scattered") {
        throw mstc::Error("unknown depot layout '" + gen_layout + "'");
      }
      gen.out = gen_out;
      std::cout << mstc::cmd_gen_scene(gen).string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "mstc: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
