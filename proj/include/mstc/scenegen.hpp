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

// Seeded synthetic scenes: a hand-laid blocked terrain, random weighted
// grids and large "field" terrains with hills and non-working patches.

#ifndef MSTC_SCENEGEN_HPP_
#define MSTC_SCENEGEN_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mstc/graph.hpp"
#include "mstc/plan_io.hpp"
#include "mstc/raster.hpp"
#include "mstc/terrain.hpp"

namespace mstc {

enum class DepotLayout { kClustered, kScattered };

namespace detail {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  // Fixed mapping so scenes do not depend on the library's distributions.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(n)));
}

/// Covering cells of the largest spanning-graph component, listed in BFS
/// order (four cells per block) from an anchor block of that component.
inline std::vector<Cell> coverable_cells(const Scene& scene, double threshold, std::mt19937_64& rng,
                                         bool from_random_anchor) {
  TraversabilityMap map = steepness_filter(scene, threshold);
  if (scene.landclass) map = merge_masks(map, scene.shape(), *scene.landclass);
  const SpanningGraph h = build_spanning_graph(map, PlannerConfig{});
  std::vector<int> comp(h.shape().size(), -1);
  std::vector<std::vector<NodeId>> comps;
  for (const NodeId n : h.nodes()) {
    if (comp[n] >= 0) continue;
    comps.emplace_back();
    std::deque<NodeId> q{n};
    comp[n] = static_cast<int>(comps.size() - 1);
    while (!q.empty()) {
      const NodeId m = q.front();
      q.pop_front();
      comps.back().push_back(m);
      for (const Arc& a : h.arcs(m)) {
        if (comp[a.to] < 0) {
          comp[a.to] = comp[n];
          q.push_back(a.to);
        }
      }
    }
  }
  if (comps.empty()) throw Error("scene generator: no traversable 2x2 block");
  const auto largest = std::max_element(comps.begin(), comps.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<NodeId> blocks = *largest;
  std::sort(blocks.begin(), blocks.end());
  const NodeId anchor = from_random_anchor ? blocks[below(rng, blocks.size())] : blocks.front();

  std::vector<Cell> cells;
  std::vector<std::uint8_t> seen(h.shape().size(), 0);
  std::deque<NodeId> q{anchor};
  seen[anchor] = 1;
  while (!q.empty()) {
    const NodeId m = q.front();
    q.pop_front();
    for (const NodeId c : h.children(m)) cells.push_back(scene.shape().cell(c));
    for (const Arc& a : h.arcs(m)) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        q.push_back(a.to);
      }
    }
  }
  return cells;
}

}  // namespace detail

/// Places `count` depots on cells the coverage loop will pass through.
/// Clustered depots sit next to each other around a random block; scattered
/// ones are sampled uniformly.
inline void place_depots(Scene& scene, int count, DepotLayout layout, std::mt19937_64& rng,
                         double threshold = 25.0) {
  std::vector<Cell> cells = detail::coverable_cells(scene, threshold, rng, true);
  if (static_cast<std::size_t>(count) > cells.size()) {
    throw Error("scene generator: not enough coverable cells for " + std::to_string(count) + " depots");
  }
  scene.depots.clear();
  if (layout == DepotLayout::kClustered) {
    scene.depots.assign(cells.begin(), cells.begin() + count);
  } else {
    std::sort(cells.begin(), cells.end());
    for (int i = 0; i < count; ++i) {
      const std::size_t j = i + detail::below(rng, cells.size() - i);
      std::swap(cells[i], cells[j]);
      scene.depots.push_back(cells[i]);
    }
  }
}

/// Unweighted blocked terrain on a 20x20 covering grid with depots in the
/// lower-left corner.
inline Scene blocked_terrain_scene(int robots = 4) {
  // Spanning blocks, top row first; '#' blocks all four covering cells.
  static constexpr std::array<const char*, 10> kLayout{
      "..........",  //
      ".##....#..",  //
      ".##....#..",  //
      "....##....",  //
      "....##....",  //
      ".#........",  //
      ".#...###..",  //
      ".#........",  //
      "......#...",  //
      "..........",
  };
  static constexpr std::array<Cell, 8> kDepots{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}, {3, 0}, {3, 1}, {2, 1}}};
  if (robots < 1 || robots > static_cast<int>(kDepots.size())) {
    throw Error("blocked terrain supports 1 to 8 robots");
  }
  Scene s = Scene::empty(20, 20);
  for (int by = 0; by < 10; ++by) {
    for (int bx = 0; bx < 10; ++bx) {
      if (kLayout[9 - by][bx] != '#') continue;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) s.block({2 * bx + dx, 2 * by + dy});
      }
    }
  }
  s.depots.assign(kDepots.begin(), kDepots.begin() + robots);
  s.validate();
  return s;
}

struct RandomSceneOptions {
  int width = 20;
  int height = 20;
  double cell_size = 1.0;
  double blocked_fraction = 0.1;  // of 2x2 blocks
  double relief = 2.0;            // elevation amplitude in meters; 0 = flat
  int lattice = 4;                // value-noise lattice spacing in cells
  int robots = 8;
  DepotLayout layout = DepotLayout::kScattered;
};

/// Smooth random elevation by bilinear value noise.
inline std::vector<double> value_noise(GridShape shape, int lattice, double amplitude, std::mt19937_64& rng) {
  const int lw = shape.width() / lattice + 2;
  const int lh = shape.height() / lattice + 2;
  std::vector<double> knots(static_cast<std::size_t>(lw) * lh);
  for (double& v : knots) v = detail::uniform(rng, 0.0, amplitude);
  std::vector<double> out(shape.size());
  for (int y = 0; y < shape.height(); ++y) {
    for (int x = 0; x < shape.width(); ++x) {
      const double fx = static_cast<double>(x) / lattice;
      const double fy = static_cast<double>(y) / lattice;
      const int ix = static_cast<int>(fx);
      const int iy = static_cast<int>(fy);
      const double tx = fx - ix;
      const double ty = fy - iy;
      auto k = [&](int i, int j) { return knots[static_cast<std::size_t>(j) * lw + i]; };
      out[shape.id({x, y})] = (1 - tx) * (1 - ty) * k(ix, iy) + tx * (1 - ty) * k(ix + 1, iy) +
                              (1 - tx) * ty * k(ix, iy + 1) + tx * ty * k(ix + 1, iy + 1);
    }
  }
  return out;
}

inline Scene random_scene(std::uint64_t seed, const RandomSceneOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  Scene s = Scene::empty(opt.width, opt.height, opt.cell_size);
  if (opt.relief > 0.0) s.elevation = value_noise(s.shape(), opt.lattice, opt.relief, rng);
  for (int by = 0; 2 * by < opt.height; ++by) {
    for (int bx = 0; 2 * bx < opt.width; ++bx) {
      if (detail::uniform(rng, 0.0, 1.0) >= opt.blocked_fraction) continue;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          if (s.shape().contains({2 * bx + dx, 2 * by + dy})) s.block({2 * bx + dx, 2 * by + dy});
        }
      }
    }
  }
  place_depots(s, opt.robots, opt.layout, rng);
  s.validate();
  return s;
}

struct FieldSceneOptions {
  int size = 256;
  double cell_size = 5.0;
  int hills = 14;
  int patches = 7;  // non-working regions
  int robots = 16;
};

/// Hilly field terrain with lakes/forest patches and clustered depots.
inline Scene field_scene(std::uint64_t seed, const FieldSceneOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  Scene s = Scene::empty(opt.size, opt.size, opt.cell_size);
  std::vector<double> elev(s.shape().size(), 0.0);
  const double n = opt.size;
  for (int i = 0; i < opt.hills; ++i) {
    const double cx = detail::uniform(rng, 0.0, n);
    const double cy = detail::uniform(rng, 0.0, n);
    const double h = detail::uniform(rng, 10.0, 80.0);
    const double sigma = detail::uniform(rng, n / 32.0, n / 8.0);
    for (int y = 0; y < opt.size; ++y) {
      for (int x = 0; x < opt.size; ++x) {
        const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        elev[s.shape().id({x, y})] += h * std::exp(-d2 / (2.0 * sigma * sigma));
      }
    }
  }
  // Gentle undulation so flat areas still carry slope weight.
  const std::vector<double> ripple = value_noise(s.shape(), 8, 2.0, rng);
  for (std::size_t i = 0; i < elev.size(); ++i) elev[i] += ripple[i];
  s.elevation = std::move(elev);

  std::vector<std::uint8_t> landclass(s.shape().size(), 1);
  for (int i = 0; i < opt.patches; ++i) {
    const double cx = detail::uniform(rng, 0.0, n);
    const double cy = detail::uniform(rng, 0.0, n);
    const double rx = detail::uniform(rng, n / 40.0, n / 10.0);
    const double ry = detail::uniform(rng, n / 40.0, n / 10.0);
    for (int y = 0; y < opt.size; ++y) {
      for (int x = 0; x < opt.size; ++x) {
        const double u = (x - cx) / rx;
        const double v = (y - cy) / ry;
        if (u * u + v * v <= 1.0) landclass[s.shape().id({x, y})] = 0;
      }
    }
  }
  s.landclass = std::move(landclass);
  place_depots(s, opt.robots, DepotLayout::kClustered, rng);
  s.validate();
  return s;
}

/// Writes scene.json plus its rasters into `dir`; returns the scene path.
inline std::filesystem::path write_scene(const Scene& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string elevation_file;
  std::string landclass_file;
  if (s.elevation) {
    elevation_file = "elevation.asc";
    std::ostringstream os;
    write_ascii_grid(os, AsciiGrid::from_planner_layout(s.shape(), *s.elevation, s.cell_size));
    write_file_atomic(dir / elevation_file, os.str());
  }
  if (s.landclass) {
    landclass_file = "landclass.txt";
    std::ostringstream os;
    write_mask(os, s.shape(), *s.landclass);
    write_file_atomic(dir / landclass_file, os.str());
  }
  const auto path = dir / "scene.json";
  write_file_atomic(path, scene_to_json(s, elevation_file, landclass_file).dump(2) + "\n");
  return path;
}

}  // namespace mstc

#endif  // MSTC_SCENEGEN_HPP_
