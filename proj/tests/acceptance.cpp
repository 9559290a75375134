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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion with
// the measured numbers and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mstc.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using mstc::Capacity;
using mstc::Cell;
using mstc::NodeId;
using mstc::Planner;
using mstc::PlannerConfig;
using mstc::Scene;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// a <= b up to rounding in summation order.
bool le(double a, double b) { return a <= b + 1e-9 * std::max(1.0, std::abs(b)); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------

Outcome loop_completeness() {
  int bad = 0;
  double slowest = 0.0;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    mstc::RandomSceneOptions o;
    o.width = 8 + static_cast<int>(rng() % 25);
    o.height = 8 + static_cast<int>(rng() % 25);
    o.blocked_fraction = 0.05 + 0.2 * static_cast<double>(rng() % 100) / 100.0;
    o.relief = static_cast<double>(rng() % 4);
    o.robots = 1;
    const Scene s = mstc::random_scene(1000 + static_cast<std::uint64_t>(i), o);
    const auto t0 = Clock::now();
    const Planner p(s, PlannerConfig{});
    slowest = std::max(slowest, seconds_since(t0));

    const auto& loop = p.loop();
    const auto& tree = p.tree();
    std::set<NodeId> expected;
    for (const NodeId n : p.spanning().nodes()) {
      if (!tree.contains(n)) continue;
      for (const NodeId c : p.spanning().children(n)) expected.insert(c);
    }
    const std::set<NodeId> seen(loop.nodes.begin(), loop.nodes.end());
    bool ok = loop.size() == 4 * tree.node_count() && seen.size() == loop.size() && seen == expected;
    for (std::size_t j = 0; ok && j < loop.size(); ++j) {
      ok = mstc::four_adjacent(loop.shape.cell(loop.at(j)), loop.shape.cell(loop.at(j + 1))) &&
           p.covering().weight(loop.at(j), loop.at(j + 1)).has_value();
    }
    if (!ok) ++bad;
  }
  std::ostringstream d;
  d << "50 scenes up to 32x32, " << bad << " invalid loops, slowest " << slowest << " s";
  return {bad == 0 && slowest < 1.0, d.str()};
}

Outcome mst_oracle() {
  int checked = 0;
  int mismatches = 0;
  for (std::uint64_t seed = 0; checked < 100; ++seed) {
    std::mt19937_64 rng(seed);
    Scene s = Scene::empty(2 * (2 + static_cast<int>(rng() % 3)), 2 * (2 + static_cast<int>(rng() % 3)));
    s.elevation = mstc::value_noise(s.shape(), 2, 1.0 + static_cast<double>(rng() % 3), rng);
    const auto map = mstc::steepness_filter(s, 25.0);
    const auto h = mstc::build_spanning_graph(map, PlannerConfig{});
    const auto nodes = h.nodes();
    if (nodes.empty()) continue;
    const auto comp = h.component(nodes[rng() % nodes.size()]);
    if (comp.node_count() < 2 || comp.node_count() > 12) continue;
    const auto t = mstc::minimum_spanning_tree(comp, comp.nodes().front());
    if (t.total_weight != oracle::exhaustive_mst_weight(comp)) ++mismatches;
    ++checked;
  }
  return {mismatches == 0, "100 graphs with <= 12 nodes, " + std::to_string(mismatches) + " mismatches"};
}

Outcome balanced_dominance() {
  int violations = 0;
  int strict = 0;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const int k = std::vector<int>{2, 4, 8}[static_cast<std::size_t>(i % 3)];
    const Scene s = testing_support::weighted_scene(200 + static_cast<std::uint64_t>(i), 10 + 2 * (i % 4), k,
                                                    mstc::DepotLayout::kClustered);
    const Planner p(s, PlannerConfig{});
    const double nb = p.run(mstc::Algorithm::kMstcNb, k, Capacity::unbounded()).max_weight();
    const double naive = p.run(mstc::Algorithm::kNaive, k, Capacity::unbounded()).max_weight();
    const double bal = p.run(mstc::Algorithm::kBalanced, k, Capacity::unbounded()).max_weight();
    if (!le(bal, naive) || !le(naive, nb)) ++violations;
    if (bal < naive * (1 - 1e-9)) ++strict;
  }
  std::ostringstream d;
  d << n << " instances, k in {2,4,8}: " << violations << " ordering violations, balanced strictly better in "
    << strict << "%";
  return {violations == 0 && strict >= 60, d.str()};
}

Outcome near_optimality() {
  int n = 0;
  double worst = 0.0;
  int over = 0;
  const int shapes[4][2] = {{4, 4}, {8, 2}, {2, 8}, {6, 2}};
  for (std::uint64_t seed = 0; n < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto* sh = shapes[seed % 4];
    const std::size_t k = 2 + seed % 2;
    Scene s = Scene::empty(sh[0], sh[1]);
    s.elevation = mstc::value_noise(s.shape(), 2, 0.8, rng);
    try {
      mstc::place_depots(s, static_cast<int>(k),
                         (seed / 4) % 2 ? mstc::DepotLayout::kClustered : mstc::DepotLayout::kScattered, rng);
    } catch (const mstc::Error&) {
      continue;  // no room for the depots on this relief
    }
    const Planner p(s, PlannerConfig{});
    if (p.loop().size() > 16 || p.loop().size() < k) continue;
    const auto model = p.cost_model(static_cast<int>(k), Capacity::unbounded());
    const std::size_t L = model.loop_size();
    std::vector<double> hops(L);
    std::vector<std::vector<double>> dist(k, std::vector<double>(L));
    for (std::size_t i = 0; i < L; ++i) {
      hops[i] = *p.covering().weight(p.loop().at(i), p.loop().at(i + 1));
      for (std::size_t r = 0; r < k; ++r) dist[r][i] = oracle::bellman_ford(p.covering(), p.covering().shape().id(s.depots[r]))[p.loop().at(i)];
    }
    const double opt = oracle::exhaustive_minmax(hops, dist, k);
    const double got = p.run(mstc::Algorithm::kBalanced, static_cast<int>(k), Capacity::unbounded()).max_weight();
    worst = std::max(worst, got / opt);
    if (got > 1.10 * opt) ++over;
    ++n;
  }
  std::ostringstream d;
  d << n << " loops of <= 16 cells, k in {2,3}: worst ratio to optimum " << worst << ", " << over << " above 1.10";
  return {over == 0, d.str()};
}

Outcome capacity_law() {
  int bad = 0;
  int plans = 0;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const Scene s = testing_support::weighted_scene(300 + static_cast<std::uint64_t>(i), 8 + 2 * (i % 5), k,
                                                    i % 2 ? mstc::DepotLayout::kClustered : mstc::DepotLayout::kScattered);
    const Planner p(s, PlannerConfig{});
    const std::size_t L = p.loop().size();
    const auto share = static_cast<std::int64_t>((L + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k));
    const std::vector<Capacity> caps{Capacity::of(1 + static_cast<std::int64_t>(rng() % 12)),
                                     Capacity::of(share / 2 + 1), Capacity::of(share),
                                     Capacity::of(share + static_cast<std::int64_t>(rng() % 20))};
    for (const Capacity c : caps) {
      for (const auto a : {mstc::Algorithm::kMstcNb, mstc::Algorithm::kMstcBo, mstc::Algorithm::kNaive,
                           mstc::Algorithm::kBalanced}) {
        const auto r = p.run(a, k, c);
        const bool one_load = a == mstc::Algorithm::kNaive || a == mstc::Algorithm::kBalanced;
        for (const auto& plan : r.plans) {
          ++plans;
          const auto sim = oracle::simulate(p.covering(), plan, c);
          const std::size_t want = (plan.path.size() + static_cast<std::size_t>(c.value()) - 1) /
                                   static_cast<std::size_t>(c.value());
          bool ok = sim.ok && plan.trips == want && sim.trips == want &&
                    sim.longest_run <= static_cast<std::size_t>(c.value());
          if (one_load && c.value() >= share) ok = ok && plan.trips == 1;
          if (!ok) ++bad;
        }
      }
    }
  }
  return {bad == 0, std::to_string(plans) + " robot plans replayed, " + std::to_string(bad) + " violations"};
}

Outcome unbounded_reduction() {
  int differ = 0;
  for (int i = 0; i < 50; ++i) {
    const int k = 2 + i % 6;
    const Scene s = testing_support::weighted_scene(400 + static_cast<std::uint64_t>(i), 12, k,
                                                    i % 2 ? mstc::DepotLayout::kClustered : mstc::DepotLayout::kScattered);
    const Planner p(s, PlannerConfig{});
    const auto model = p.cost_model(k, Capacity::unbounded());
    const auto cap = mstc::capacity_partition(model, static_cast<std::size_t>(k));
    const auto bal = mstc::balanced_mstc(model, static_cast<std::size_t>(k));
    if (cap.merged.partition.keys != bal.partition.keys || cap.merged.robot_of != bal.robot_of ||
        cap.merged.partition.weights != bal.partition.weights) {
      ++differ;
    }
  }

  // Field fixture: naive minus balanced for growing capacity.
  const Planner field(mstc::field_scene(0), PlannerConfig{});
  std::vector<double> gaps;
  std::ostringstream seq;
  for (const Capacity c : {Capacity::of(400), Capacity::of(1600), Capacity::of(6400), Capacity::unbounded()}) {
    const double naive = field.run(mstc::Algorithm::kNaive, 4, c).max_weight();
    const double bal = field.run(mstc::Algorithm::kBalanced, 4, c).max_weight();
    gaps.push_back(naive - bal);
    seq << (gaps.size() > 1 ? " > " : "") << "c=" << c.to_string() << ":" << gaps.back();
  }
  bool shrinking = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) shrinking = shrinking && gaps[i] < gaps[i - 1];

  std::ostringstream d;
  d << "50 instances, " << differ << " differ from balanced; field k=4 gap " << seq.str();
  return {differ == 0 && shrinking, d.str()};
}

Outcome weight_formula() {
  const PlannerConfig cfg;
  const mstc::SlopeBounds b{0.0, 25.0};
  const double steep = mstc::edge_weight(1.0, 25.0, b, cfg);
  const double flat = mstc::edge_weight(1.0, 0.0, b, cfg);
  bool ok = steep == 1.0 && flat == 1.0 / 3.0;

  std::vector<Scene> fixtures{mstc::blocked_terrain_scene(4), mstc::field_scene(0)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    fixtures.push_back(testing_support::weighted_scene(seed, 16, 2, mstc::DepotLayout::kScattered));
  }
  std::size_t edges = 0;
  int out_of_range = 0;
  for (const Scene& s : fixtures) {
    const Planner p(s, cfg);
    const auto bounds = p.traversability().bounds;
    auto check = [&](const mstc::Arc& a) {
      ++edges;
      double t = -1.0;
      try {
        t = mstc::normalized_slope(a.slope, bounds);
      } catch (const mstc::Error&) {
      }
      const double w = cfg.alpha * a.length + cfg.beta * t;
      if (!(t >= 0.0 && t <= 1.0) || std::abs(w - a.weight) > 1e-12 * std::max(1.0, w)) ++out_of_range;
    };
    for (const NodeId n : p.covering().nodes()) {
      for (const auto& a : p.covering().arcs(n)) check(a);
    }
    for (const NodeId n : p.spanning().nodes()) {
      for (const auto& a : p.spanning().arcs(n)) check(a);
    }
  }
  std::ostringstream d;
  d << "steep unit edge " << steep << ", flat unit edge " << flat << "; " << edges << " arcs, " << out_of_range
    << " outside [0,1] or off-formula";
  return {ok && out_of_range == 0, d.str()};
}

Outcome traversability() {
  int bad = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Scene s = testing_support::rough_dem(500 + seed, 10 + static_cast<int>(seed % 9), 9 + static_cast<int>(seed % 7),
                                               1.0 + static_cast<double>(seed % 4));
    const auto map = mstc::steepness_filter(s, 25.0);
    std::set<oracle::Edge> removed = oracle::open_edges(s);
    for (const auto& e : oracle::map_edges(map)) removed.erase(e);
    bool ok = removed == oracle::steep_edges(s, 25.0);
    const auto cells = oracle::free_cells(map);
    if (!cells.empty()) {
      const std::vector<Cell> depots{*cells.begin(), *std::next(cells.begin(), static_cast<long>(cells.size() / 2))};
      ok = ok && oracle::free_cells(mstc::remove_isolated(map, depots)) == oracle::reachable_fixpoint(map, depots);
    }
    if (!ok) ++bad;
  }
  return {bad == 0, "50 DEMs, " + std::to_string(bad) + " disagree with the brute-force scans"};
}

Outcome scalability() {
  const auto t0 = Clock::now();
  const Planner p(mstc::field_scene(0), PlannerConfig{});
  std::vector<double> w;
  std::ostringstream seq;
  for (const int k : {4, 8, 12, 16}) {
    w.push_back(p.run(mstc::Algorithm::kBalanced, k, Capacity::of(400)).max_weight());
    seq << (w.size() > 1 ? ", " : "") << "k=" << k << ":" << w.back();
  }
  const double secs = seconds_since(t0);
  bool monotone = true;
  for (std::size_t i = 1; i < w.size(); ++i) monotone = monotone && le(w[i], w[i - 1]);
  std::ostringstream d;
  d << "256x256 field, c=400, loop " << p.loop().size() << " cells: " << seq.str() << " in " << secs << " s";
  return {monotone && secs < 60.0, d.str()};
}

Outcome determinism() {
  testing_support::TempDir dir("acceptance");
  mstc::FieldSceneOptions fo;
  fo.size = 96;
  fo.robots = 8;
  const std::vector<Scene> scenes{mstc::blocked_terrain_scene(4),
                                  testing_support::weighted_scene(7, 10, 8, mstc::DepotLayout::kScattered),
                                  mstc::field_scene(3, fo)};
  int differ = 0;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const auto scene = mstc::write_scene(scenes[i], dir.path() / ("scene" + std::to_string(i)));
    std::vector<std::string> first;
    for (int rep = 0; rep < 10; ++rep) {
      mstc::RunSpec spec;
      spec.scene = scene;
      spec.algorithms = {mstc::Algorithm::kMstcBo, mstc::Algorithm::kNaive, mstc::Algorithm::kBalanced};
      spec.robots = {2, 4};
      spec.capacities = {Capacity::of(30), Capacity::unbounded()};
      spec.seed = 17;
      spec.out = dir.path() / ("out" + std::to_string(i) + "_" + std::to_string(rep));
      std::ostringstream log;
      std::vector<std::string> texts;
      for (const auto& row : mstc::cmd_plan(spec, log)) texts.push_back(testing_support::read_text(spec.out / row.file));
      texts.push_back(testing_support::read_text(spec.out / "summary.json"));
      if (rep == 0) {
        first = texts;
      } else if (texts != first) {
        ++differ;
      }
    }
  }
  return {differ == 0, "3 scenes x 10 runs, " + std::to_string(differ) + " runs differ from the first"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"coverage loop completeness", loop_completeness},
      {"minimum spanning tree vs exhaustive", mst_oracle},
      {"balanced <= naive <= mstc-nb", balanced_dominance},
      {"near-optimality on small loops", near_optimality},
      {"capacity law by event replay", capacity_law},
      {"unbounded capacity reduces to balanced", unbounded_reduction},
      {"edge weight formula and slope range", weight_formula},
      {"steepness filter and isolation pruning", traversability},
      {"scalability trend on field terrain", scalability},
      {"byte-identical repeated runs", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
