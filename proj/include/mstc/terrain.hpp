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

// Scene ingestion and traversability analysis.
//
// A scene is a grid of covering cells with optional elevation and land-class
// rasters. The traversability map keeps the 4-connected edges whose slope is
// under the threshold, drops non-working cells and everything that cannot be
// reached from a depot.

#ifndef MSTC_TERRAIN_HPP_
#define MSTC_TERRAIN_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mstc/raster.hpp"
#include "mstc/types.hpp"

namespace mstc {

struct Scene {
  int width = 0;
  int height = 0;
  double cell_size = 1.0;                       // meters per covering cell edge
  std::optional<std::vector<double>> elevation;  // planner layout, meters
  std::vector<std::uint8_t> blocked;            // 1 = obstacle
  std::optional<std::vector<std::uint8_t>> landclass;  // 1 = workable
  std::vector<Cell> depots;                     // one per robot

  GridShape shape() const { return {width, height}; }

  static Scene empty(int width, int height, double cell_size = 1.0) {
    if (width <= 0 || height <= 0) throw Error("scene dimensions must be positive");
    Scene s;
    s.width = width;
    s.height = height;
    s.cell_size = cell_size;
    s.blocked.assign(s.shape().size(), 0);
    return s;
  }

  bool is_blocked(Cell c) const { return blocked[shape().id(c)] != 0; }
  bool is_workable(Cell c) const { return !landclass || (*landclass)[shape().id(c)] != 0; }
  double elevation_at(Cell c) const { return elevation ? (*elevation)[shape().id(c)] : 0.0; }

  void block(Cell c) { blocked[shape().id(c)] = 1; }

  /// Throws Error on the first violated invariant.
  void validate() const {
    if (width <= 0 || height <= 0) throw Error("scene dimensions must be positive");
    if (!(cell_size > 0.0)) throw Error("scene cell_size must be positive");
    if (blocked.size() != shape().size()) throw Error("blocked raster size mismatch");
    if (elevation && elevation->size() != shape().size()) {
      throw Error("elevation raster has " + std::to_string(elevation->size()) +
                  " samples, expected " + std::to_string(shape().size()));
    }
    if (landclass && landclass->size() != shape().size()) {
      throw Error("land-class raster size mismatch");
    }
    if (depots.empty()) throw Error("scene has no depots");
    std::set<Cell> seen;
    for (std::size_t i = 0; i < depots.size(); ++i) {
      const Cell d = depots[i];
      const std::string where = "depot " + std::to_string(i + 1) + " at (" +
                                std::to_string(d.x) + "," + std::to_string(d.y) + ")";
      if (!shape().contains(d)) throw Error(where + " is outside the grid");
      if (is_blocked(d)) throw Error(where + " is on a blocked cell");
      if (!is_workable(d)) throw Error(where + " is in a non-working region");
      if (!seen.insert(d).second) throw Error(where + " duplicates another depot");
    }
  }
};

namespace detail {

inline Cell parse_cell(const nlohmann::json& j, int width, int height, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(std::string("scene: ") + what + " entries must be [x, y] integer pairs");
  }
  const Cell c{j[0].get<int>(), j[1].get<int>()};
  if (!GridShape(width, height).contains(c)) {
    throw Error(std::string("scene: ") + what + " cell (" + std::to_string(c.x) + "," +
                std::to_string(c.y) + ") outside " + std::to_string(width) + "x" +
                std::to_string(height) + " grid");
  }
  return c;
}

}  // namespace detail

/// Builds a scene from its JSON document; raster paths resolve against base_dir.
inline Scene parse_scene(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw Error("scene: document must be a JSON object");
  for (const char* key : {"width", "height", "depots"}) {
    if (!doc.contains(key)) throw Error(std::string("scene: missing field '") + key + "'");
  }
  Scene s;
  try {
    s = Scene::empty(doc.at("width").get<int>(), doc.at("height").get<int>(),
                     doc.value("cell_size", 1.0));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("scene: ") + e.what());
  }
  if (!doc.at("depots").is_array()) throw Error("scene: depots must be an array");
  for (const auto& d : doc.at("depots")) s.depots.push_back(detail::parse_cell(d, s.width, s.height, "depots"));
  if (doc.contains("blocked")) {
    if (!doc.at("blocked").is_array()) throw Error("scene: blocked must be an array");
    for (const auto& b : doc.at("blocked")) s.block(detail::parse_cell(b, s.width, s.height, "blocked"));
  }
  if (doc.contains("elevation_file") && !doc.at("elevation_file").is_null()) {
    const auto path = base_dir / doc.at("elevation_file").get<std::string>();
    const AsciiGrid grid = read_ascii_grid(path);
    if (grid.ncols != s.width || grid.nrows != s.height) {
      throw Error("elevation raster is " + std::to_string(grid.ncols) + "x" +
                  std::to_string(grid.nrows) + ", scene is " + std::to_string(s.width) + "x" +
                  std::to_string(s.height));
    }
    std::vector<double> elev = grid.to_planner_layout();
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        if (grid.is_nodata({x, y})) {
          s.block({x, y});
          elev[s.shape().id({x, y})] = 0.0;
        }
      }
    }
    s.elevation = std::move(elev);
  }
  if (doc.contains("landclass_file") && !doc.at("landclass_file").is_null()) {
    s.landclass = read_mask(base_dir / doc.at("landclass_file").get<std::string>(), s.shape());
  }
  s.validate();
  return s;
}

inline Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scene file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("scene " + path.string() + ": " + e.what());
  }
  return parse_scene(doc, path.parent_path());
}

/// Scene JSON with the given raster file names (written separately).
inline nlohmann::json scene_to_json(const Scene& s, const std::string& elevation_file = {},
                                    const std::string& landclass_file = {}) {
  nlohmann::json doc;
  doc["width"] = s.width;
  doc["height"] = s.height;
  doc["cell_size"] = s.cell_size;
  doc["depots"] = nlohmann::json::array();
  for (const Cell d : s.depots) doc["depots"].push_back({d.x, d.y});
  doc["blocked"] = nlohmann::json::array();
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      if (s.is_blocked({x, y})) doc["blocked"].push_back({x, y});
    }
  }
  if (!elevation_file.empty()) doc["elevation_file"] = elevation_file;
  if (!landclass_file.empty()) doc["landclass_file"] = landclass_file;
  return doc;
}

/// Slope of the 4-connected edge a-b in degrees.
inline double compute_edge_slope(const Scene& scene, Cell a, Cell b) {
  if (!scene.shape().contains(a) || !scene.shape().contains(b) || !four_adjacent(a, b)) {
    throw Error("compute_edge_slope: cells (" + std::to_string(a.x) + "," + std::to_string(a.y) +
                ") and (" + std::to_string(b.x) + "," + std::to_string(b.y) +
                ") are not 4-adjacent");
  }
  if (!scene.elevation) return 0.0;
  const double rise = std::abs(scene.elevation_at(a) - scene.elevation_at(b));
  return std::atan(rise / scene.cell_size) * 180.0 / std::numbers::pi;
}

struct SlopeBounds {
  double min_deg = 0.0;
  double max_deg = 0.0;
};

/// Free cells plus the slopes of the retained 4-connected edges.
///
/// Edges are stored on their west/south endpoint: east[id] is the edge to
/// (x+1, y), north[id] the edge to (x, y+1). NaN marks an absent edge.
struct TraversabilityMap {
  GridShape shape;
  std::vector<std::uint8_t> free;
  std::vector<double> east;
  std::vector<double> north;
  SlopeBounds bounds;

  explicit TraversabilityMap(GridShape s = {})
      : shape(s),
        free(s.size(), 0),
        east(s.size(), kAbsent),
        north(s.size(), kAbsent) {}

  static constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

  bool is_free(Cell c) const { return shape.contains(c) && free[shape.id(c)] != 0; }

  std::optional<double> slope(Cell a, Cell b) const {
    const double* slot = slot_for(a, b);
    if (!slot || std::isnan(*slot)) return std::nullopt;
    return *slot;
  }
  bool has_edge(Cell a, Cell b) const { return slope(a, b).has_value(); }

  void set_slope(Cell a, Cell b, double deg) {
    double* slot = slot_for(a, b);
    if (!slot) throw Error("set_slope: cells are not 4-adjacent inside the grid");
    *slot = deg;
  }
  void remove_edge(Cell a, Cell b) {
    if (double* slot = slot_for(a, b)) *slot = kAbsent;
  }

  /// Calls f(a, b, slope) for every retained edge in row-major order, east edge first.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (int y = 0; y < shape.height(); ++y) {
      for (int x = 0; x < shape.width(); ++x) {
        const NodeId id = shape.id({x, y});
        if (!std::isnan(east[id])) f(Cell{x, y}, Cell{x + 1, y}, east[id]);
        if (!std::isnan(north[id])) f(Cell{x, y}, Cell{x, y + 1}, north[id]);
      }
    }
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for_each_edge([&](Cell, Cell, double) { ++n; });
    return n;
  }
  std::size_t free_count() const {
    return static_cast<std::size_t>(std::count(free.begin(), free.end(), std::uint8_t{1}));
  }

  /// Drops edges touching a non-free cell and recomputes the minimum slope.
  void normalize() {
    for (int y = 0; y < shape.height(); ++y) {
      for (int x = 0; x < shape.width(); ++x) {
        const NodeId id = shape.id({x, y});
        if (!free[id] || !is_free({x + 1, y})) east[id] = kAbsent;
        if (!free[id] || !is_free({x, y + 1})) north[id] = kAbsent;
      }
    }
    double lo = std::numeric_limits<double>::infinity();
    for_each_edge([&](Cell, Cell, double s) { lo = std::min(lo, s); });
    bounds.min_deg = std::isinf(lo) ? bounds.max_deg : lo;
  }

  friend bool operator==(const TraversabilityMap& a, const TraversabilityMap& b) {
    auto same = [](const std::vector<double>& u, const std::vector<double>& v) {
      return std::equal(u.begin(), u.end(), v.begin(), v.end(), [](double p, double q) {
        return (std::isnan(p) && std::isnan(q)) || p == q;
      });
    };
    return a.shape == b.shape && a.free == b.free && same(a.east, b.east) &&
           same(a.north, b.north) && a.bounds.min_deg == b.bounds.min_deg &&
           a.bounds.max_deg == b.bounds.max_deg;
  }

 private:
  const double* slot_for(Cell a, Cell b) const {
    if (!shape.contains(a) || !shape.contains(b) || !four_adjacent(a, b)) return nullptr;
    const Cell lo{std::min(a.x, b.x), std::min(a.y, b.y)};
    return a.y == b.y ? &east[shape.id(lo)] : &north[shape.id(lo)];
  }
  double* slot_for(Cell a, Cell b) {
    return const_cast<double*>(std::as_const(*this).slot_for(a, b));
  }
};

/// Every non-blocked cell, with every edge between two of them. Slopes are
/// not thresholded; bounds span the observed range.
inline TraversabilityMap initial_map(const Scene& scene) {
  TraversabilityMap map(scene.shape());
  for (std::size_t i = 0; i < map.free.size(); ++i) map.free[i] = scene.blocked[i] ? 0 : 1;
  double hi = 0.0;
  for (int y = 0; y < scene.height; ++y) {
    for (int x = 0; x < scene.width; ++x) {
      const Cell a{x, y};
      if (!map.is_free(a)) continue;
      for (const Cell b : {Cell{x + 1, y}, Cell{x, y + 1}}) {
        if (!map.is_free(b)) continue;
        const double s = compute_edge_slope(scene, a, b);
        map.set_slope(a, b, s);
        hi = std::max(hi, s);
      }
    }
  }
  map.bounds.max_deg = hi;
  map.normalize();
  return map;
}

/// Removes edges steeper than threshold and cells left without edges.
/// Sets max bound to the threshold and min bound to the gentlest retained edge.
inline TraversabilityMap steepness_filter(const TraversabilityMap& in, double threshold_deg) {
  if (!(threshold_deg > 0.0)) throw Error("slope threshold must be positive");
  TraversabilityMap out = in;
  std::vector<std::uint8_t> touched(out.shape.size(), 0);
  for (int y = 0; y < out.shape.height(); ++y) {
    for (int x = 0; x < out.shape.width(); ++x) {
      const Cell a{x, y};
      for (const Cell b : {Cell{x + 1, y}, Cell{x, y + 1}}) {
        const auto s = out.slope(a, b);
        if (!s) continue;
        if (*s > threshold_deg) {
          out.remove_edge(a, b);
        } else {
          touched[out.shape.id(a)] = 1;
          touched[out.shape.id(b)] = 1;
        }
      }
    }
  }
  for (std::size_t i = 0; i < out.free.size(); ++i) {
    if (!touched[i]) out.free[i] = 0;
  }
  out.bounds.max_deg = threshold_deg;
  out.normalize();
  return out;
}

inline TraversabilityMap steepness_filter(const Scene& scene, double threshold_deg) {
  return steepness_filter(initial_map(scene), threshold_deg);
}

/// Keeps only cells connected (through retained edges) to some depot.
inline TraversabilityMap remove_isolated(const TraversabilityMap& in, const std::vector<Cell>& depots) {
  TraversabilityMap out = in;
  std::vector<std::uint8_t> reached(in.shape.size(), 0);
  std::deque<Cell> queue;
  for (const Cell d : depots) {
    if (!in.is_free(d)) {
      throw Error("depot (" + std::to_string(d.x) + "," + std::to_string(d.y) +
                  ") is not traversable after terrain filtering");
    }
    if (!reached[in.shape.id(d)]) {
      reached[in.shape.id(d)] = 1;
      queue.push_back(d);
    }
  }
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (const Direction dir : kDirections) {
      const Cell n = step(c, dir);
      if (in.has_edge(c, n) && !reached[in.shape.id(n)]) {
        reached[in.shape.id(n)] = 1;
        queue.push_back(n);
      }
    }
  }
  for (std::size_t i = 0; i < out.free.size(); ++i) out.free[i] = out.free[i] && reached[i];
  out.normalize();
  return out;
}

/// Cellwise AND of the traversability map with a land-class raster.
inline TraversabilityMap merge_masks(const TraversabilityMap& steepness, GridShape mask_shape,
                                     const std::vector<std::uint8_t>& landclass) {
  if (mask_shape != steepness.shape || landclass.size() != steepness.shape.size()) {
    throw Error("merge_masks: land-class raster is " + std::to_string(mask_shape.width()) + "x" +
                std::to_string(mask_shape.height()) + ", traversability map is " +
                std::to_string(steepness.shape.width()) + "x" +
                std::to_string(steepness.shape.height()));
  }
  TraversabilityMap out = steepness;
  for (std::size_t i = 0; i < out.free.size(); ++i) {
    out.free[i] = (out.free[i] && landclass[i]) ? 1 : 0;
  }
  out.normalize();
  return out;
}

/// Steepness filter, land-class merge, then isolation pruning from the depots.
inline TraversabilityMap build_traversability(const Scene& scene, double threshold_deg) {
  TraversabilityMap map = steepness_filter(scene, threshold_deg);
  if (scene.landclass) map = merge_masks(map, scene.shape(), *scene.landclass);
  return remove_isolated(map, scene.depots);
}

}  // namespace mstc

#endif  // MSTC_TERRAIN_HPP_
