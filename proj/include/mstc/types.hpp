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

// Core value types shared by every planner module: grid cells, node ids,
// directions and the workload capacity.

#ifndef MSTC_TYPES_HPP_
#define MSTC_TYPES_HPP_

#include <array>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mstc {

/// Thrown for malformed inputs and violated planner preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major index of a grid cell (y * width + x).
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/// A grid cell. y grows northwards.
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

/// Grid dimensions plus the cell <-> id mapping.
class GridShape {
 public:
  constexpr GridShape() = default;
  constexpr GridShape(int width, int height) : width_(width), height_(height) {}

  constexpr int width() const { return width_; }
  constexpr int height() const { return height_; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  constexpr bool contains(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  constexpr NodeId id(Cell c) const { return c.y * width_ + c.x; }
  constexpr Cell cell(NodeId id) const { return {id % width_, id / width_}; }

  friend constexpr bool operator==(const GridShape&, const GridShape&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
};

/// Compass directions in counter-clockwise order.
enum class Direction : std::uint8_t { kEast = 0, kNorth = 1, kWest = 2, kSouth = 3 };

inline constexpr std::array<Direction, 4> kDirections{Direction::kEast, Direction::kNorth,
                                                      Direction::kWest, Direction::kSouth};

constexpr Cell offset(Direction d) {
  switch (d) {
    case Direction::kEast:
      return {1, 0};
    case Direction::kNorth:
      return {0, 1};
    case Direction::kWest:
      return {-1, 0};
    case Direction::kSouth:
      return {0, -1};
  }
  return {0, 0};
}

constexpr Cell step(Cell c, Direction d) {
  const Cell o = offset(d);
  return {c.x + o.x, c.y + o.y};
}

constexpr bool four_adjacent(Cell a, Cell b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx + dy == 1;
}

constexpr int chebyshev(Cell a, Cell b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}

/// Material capacity per load, counted in serviced covering cells.
class Capacity {
 public:
  static constexpr Capacity unbounded() { return Capacity(); }

  static Capacity of(std::int64_t cells) {
    if (cells < 1) throw Error("capacity must be a positive integer, got " + std::to_string(cells));
    Capacity c;
    c.limit_ = cells;
    return c;
  }

  /// Accepts a positive integer or "inf".
  static Capacity parse(std::string_view text) {
    if (text == "inf" || text == "INF" || text == "infinity") return unbounded();
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      throw Error("invalid capacity '" + std::string(text) + "' (expected integer or inf)");
    }
    return of(v);
  }

  constexpr bool bounded() const { return limit_ != kUnbounded; }

  std::int64_t value() const {
    if (!bounded()) throw Error("capacity is unbounded");
    return limit_;
  }

  /// Number of loads needed to service `cells` cells; 1 when unbounded.
  constexpr std::size_t trips(std::size_t cells) const {
    if (!bounded() || cells == 0) return 1;
    const auto c = static_cast<std::size_t>(limit_);
    return (cells + c - 1) / c;
  }

  /// True when a segment of `cells` nodes fits in a single load.
  constexpr bool fits(std::size_t cells) const {
    return !bounded() || cells <= static_cast<std::size_t>(limit_);
  }

  std::string to_string() const { return bounded() ? std::to_string(limit_) : "inf"; }

  friend constexpr bool operator==(const Capacity&, const Capacity&) = default;

 private:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();
  constexpr Capacity() = default;
  std::int64_t limit_ = kUnbounded;
};

}  // namespace mstc

#endif  // MSTC_TYPES_HPP_
