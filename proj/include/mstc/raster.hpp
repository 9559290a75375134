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

// ESRI ASCII grid (.asc) and 0/1 text mask readers/writers.
//
// Both formats store the northernmost row first. Cell (x, y) of the planner
// grid (y growing north) therefore lives in file row nrows - 1 - y.

#ifndef MSTC_RASTER_HPP_
#define MSTC_RASTER_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mstc/types.hpp"

namespace mstc {

struct AsciiGrid {
  int ncols = 0;
  int nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;
  std::optional<double> nodata;
  std::vector<double> values;  // file order: north row first

  GridShape shape() const { return {ncols, nrows}; }

  /// Value at planner cell (x, y).
  double at(Cell c) const {
    return values[static_cast<std::size_t>(nrows - 1 - c.y) * ncols + c.x];
  }

  bool is_nodata(Cell c) const {
    const double v = at(c);
    return std::isnan(v) || (nodata && v == *nodata);
  }

  /// Values re-ordered to planner row-major layout (row 0 = south).
  std::vector<double> to_planner_layout() const {
    std::vector<double> out(values.size());
    for (int y = 0; y < nrows; ++y) {
      for (int x = 0; x < ncols; ++x) out[static_cast<std::size_t>(y) * ncols + x] = at({x, y});
    }
    return out;
  }

  static AsciiGrid from_planner_layout(GridShape shape, const std::vector<double>& planner,
                                       double cellsize) {
    AsciiGrid g;
    g.ncols = shape.width();
    g.nrows = shape.height();
    g.cellsize = cellsize;
    g.values.resize(planner.size());
    for (int y = 0; y < g.nrows; ++y) {
      for (int x = 0; x < g.ncols; ++x) {
        g.values[static_cast<std::size_t>(g.nrows - 1 - y) * g.ncols + x] =
            planner[static_cast<std::size_t>(y) * g.ncols + x];
      }
    }
    return g;
  }
};

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline bool starts_alpha(const std::string& token) {
  return !token.empty() && std::isalpha(static_cast<unsigned char>(token[0]));
}

}  // namespace detail

inline AsciiGrid read_ascii_grid(std::istream& in) {
  AsciiGrid grid;
  bool have_cols = false;
  bool have_rows = false;
  std::string token;
  std::vector<double> first_values;

  while (in >> token) {
    if (!detail::starts_alpha(token)) {
      // First data value; header is over. "nan"/"inf" would be alphabetic, so
      // data rows must start with a number.
      first_values.push_back(std::stod(token));
      break;
    }
    const std::string key = detail::lower(token);
    std::string value;
    if (!(in >> value)) throw Error("ascii grid: missing value for header key '" + token + "'");
    try {
      if (key == "ncols") {
        grid.ncols = std::stoi(value);
        have_cols = true;
      } else if (key == "nrows") {
        grid.nrows = std::stoi(value);
        have_rows = true;
      } else if (key == "xllcorner" || key == "xllcenter") {
        grid.xllcorner = std::stod(value);
      } else if (key == "yllcorner" || key == "yllcenter") {
        grid.yllcorner = std::stod(value);
      } else if (key == "cellsize") {
        grid.cellsize = std::stod(value);
      } else if (key == "nodata_value") {
        grid.nodata = std::stod(value);
      } else {
        throw Error("ascii grid: unknown header key '" + token + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error("ascii grid: bad value '" + value + "' for '" + token + "'");
    }
  }
  if (!have_cols || !have_rows) throw Error("ascii grid: ncols and nrows are required");
  if (grid.ncols <= 0 || grid.nrows <= 0) throw Error("ascii grid: non-positive dimensions");
  if (!(grid.cellsize > 0.0)) throw Error("ascii grid: cellsize must be positive");

  const std::size_t expected = static_cast<std::size_t>(grid.ncols) * grid.nrows;
  grid.values.reserve(expected);
  for (double v : first_values) grid.values.push_back(v);
  double v = 0.0;
  while (grid.values.size() < expected && in >> v) grid.values.push_back(v);
  if (grid.values.size() != expected) {
    throw Error("ascii grid: expected " + std::to_string(expected) + " values, found " +
                std::to_string(grid.values.size()));
  }
  if (in >> token) throw Error("ascii grid: trailing data after " + std::to_string(expected) +
                               " values");
  return grid;
}

inline AsciiGrid read_ascii_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open elevation file " + path.string());
  return read_ascii_grid(in);
}

inline void write_ascii_grid(std::ostream& out, const AsciiGrid& grid) {
  out << "ncols " << grid.ncols << "\n"
      << "nrows " << grid.nrows << "\n"
      << "xllcorner " << grid.xllcorner << "\n"
      << "yllcorner " << grid.yllcorner << "\n"
      << "cellsize " << grid.cellsize << "\n";
  if (grid.nodata) out << "NODATA_value " << *grid.nodata << "\n";
  out << std::setprecision(10);
  for (int r = 0; r < grid.nrows; ++r) {
    for (int c = 0; c < grid.ncols; ++c) {
      if (c) out << ' ';
      out << grid.values[static_cast<std::size_t>(r) * grid.ncols + c];
    }
    out << "\n";
  }
}

/// Reads a whitespace-separated 0/1 raster into planner layout.
inline std::vector<std::uint8_t> read_mask(std::istream& in, GridShape shape) {
  std::vector<int> file_order;
  file_order.reserve(shape.size());
  std::string token;
  while (in >> token) {
    if (token != "0" && token != "1") throw Error("mask: expected 0 or 1, got '" + token + "'");
    file_order.push_back(token == "1");
  }
  if (file_order.size() != shape.size()) {
    throw Error("mask: expected " + std::to_string(shape.size()) + " cells (" +
                std::to_string(shape.width()) + "x" + std::to_string(shape.height()) +
                "), found " + std::to_string(file_order.size()));
  }
  std::vector<std::uint8_t> mask(shape.size());
  for (int y = 0; y < shape.height(); ++y) {
    for (int x = 0; x < shape.width(); ++x) {
      mask[shape.id({x, y})] =
          static_cast<std::uint8_t>(file_order[static_cast<std::size_t>(shape.height() - 1 - y) *
                                                   shape.width() + x]);
    }
  }
  return mask;
}

inline std::vector<std::uint8_t> read_mask(const std::filesystem::path& path, GridShape shape) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mask file " + path.string());
  return read_mask(in, shape);
}

inline void write_mask(std::ostream& out, GridShape shape, const std::vector<std::uint8_t>& mask) {
  for (int y = shape.height() - 1; y >= 0; --y) {
    for (int x = 0; x < shape.width(); ++x) {
      if (x) out << ' ';
      out << (mask[shape.id({x, y})] ? '1' : '0');
    }
    out << "\n";
  }
}

}  // namespace mstc

#endif  // MSTC_RASTER_HPP_
