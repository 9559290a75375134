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

#ifndef MSTC_SVG_HPP_
#define MSTC_SVG_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mstc/plan_io.hpp"
#include "mstc/terrain.hpp"

namespace mstc {

struct SvgOptions {
  double max_extent = 900.0;  // pixels along the longer side
};

namespace detail {

inline constexpr std::array<const char*, 12> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939",
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class SvgCanvas {
 public:
  SvgCanvas(int height, double px) : height_(height), px_(px) {}

  double x(int cx) const { return (cx + 0.5) * px_; }
  // Planner y grows north; SVG y grows down.
  double y(int cy) const { return (height_ - 1 - cy + 0.5) * px_; }
  double left(int cx) const { return cx * px_; }
  double top(int cy) const { return (height_ - 1 - cy) * px_; }
  double px() const { return px_; }

  std::string points(const std::vector<Cell>& cells) const {
    std::string s;
    for (const Cell c : cells) {
      if (!s.empty()) s += ' ';
      s += fmt(x(c.x)) + "," + fmt(y(c.y));
    }
    return s;
  }

 private:
  int height_;
  double px_;
};

inline std::string star(double cx, double cy, double r) {
  std::string s;
  for (int i = 0; i < 10; ++i) {
    const double a = -std::numbers::pi / 2 + i * std::numbers::pi / 5;
    const double rr = i % 2 ? r * 0.45 : r;
    if (!s.empty()) s += ' ';
    s += fmt(cx + rr * std::cos(a)) + "," + fmt(cy + rr * std::sin(a));
  }
  return s;
}

}  // namespace detail

/// Renders the scene and, when given, a plan on top of it. Throws if the
/// plan was produced for a different grid or depot set.
inline std::string render_svg(const Scene& scene, const std::optional<PlanDocument>& plan,
                              const SvgOptions& opt = {}) {
  if (plan) {
    if (plan->width != scene.width || plan->height != scene.height) {
      throw Error("render: plan grid " + std::to_string(plan->width) + "x" + std::to_string(plan->height) +
                  " does not match scene grid " + std::to_string(scene.width) + "x" +
                  std::to_string(scene.height));
    }
    if (plan->depots.size() > scene.depots.size() ||
        !std::equal(plan->depots.begin(), plan->depots.end(), scene.depots.begin())) {
      throw Error("render: plan depots do not match the scene depots");
    }
  }
  const double px = std::clamp(opt.max_extent / std::max(scene.width, scene.height), 2.0, 32.0);
  const detail::SvgCanvas cv(scene.height, px);
  const double w = scene.width * px;
  const double h = scene.height * px;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt(w) << "\" height=\"" << detail::fmt(h)
     << "\" viewBox=\"0 0 " << detail::fmt(w) << " " << detail::fmt(h) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Terrain shading by elevation.
  if (scene.elevation && !scene.elevation->empty()) {
    const auto [lo, hi] = std::minmax_element(scene.elevation->begin(), scene.elevation->end());
    const double span = *hi - *lo;
    if (span > 0.0) {
      os << "<g id=\"elevation\" stroke=\"none\">\n";
      for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
          const double t = (scene.elevation_at({x, y}) - *lo) / span;
          const int v = 245 - static_cast<int>(std::lround(t * 110.0));
          os << "<rect x=\"" << detail::fmt(cv.left(x)) << "\" y=\"" << detail::fmt(cv.top(y)) << "\" width=\""
             << detail::fmt(px) << "\" height=\"" << detail::fmt(px) << "\" fill=\"rgb(" << v << "," << v << ","
             << v << ")\"/>\n";
        }
      }
      os << "</g>\n";
    }
  }
  if (scene.landclass) {
    os << "<g id=\"non-working\" fill=\"#b7dfb0\" fill-opacity=\"0.7\" stroke=\"none\">\n";
    for (int y = 0; y < scene.height; ++y) {
      for (int x = 0; x < scene.width; ++x) {
        if (scene.is_workable({x, y})) continue;
        os << "<rect x=\"" << detail::fmt(cv.left(x)) << "\" y=\"" << detail::fmt(cv.top(y)) << "\" width=\""
           << detail::fmt(px) << "\" height=\"" << detail::fmt(px) << "\"/>\n";
      }
    }
    os << "</g>\n";
  }
  if (px >= 6.0) {
    os << "<path id=\"grid\" stroke=\"#d0d0d0\" stroke-width=\"0.5\" fill=\"none\" d=\"";
    for (int x = 0; x <= scene.width; ++x) os << "M" << detail::fmt(x * px) << " 0V" << detail::fmt(h);
    for (int y = 0; y <= scene.height; ++y) os << "M0 " << detail::fmt(y * px) << "H" << detail::fmt(w);
    os << "\"/>\n";
  }
  os << "<g id=\"blocked\" stroke=\"#444444\" stroke-width=\"" << detail::fmt(std::max(0.5, px / 10)) << "\">\n";
  const double m = px * 0.2;
  for (int y = 0; y < scene.height; ++y) {
    for (int x = 0; x < scene.width; ++x) {
      if (!scene.is_blocked({x, y})) continue;
      const double l = cv.left(x) + m;
      const double t = cv.top(y) + m;
      const double r = cv.left(x) + px - m;
      const double b = cv.top(y) + px - m;
      os << "<path d=\"M" << detail::fmt(l) << " " << detail::fmt(t) << "L" << detail::fmt(r) << " "
         << detail::fmt(b) << "M" << detail::fmt(r) << " " << detail::fmt(t) << "L" << detail::fmt(l) << " "
         << detail::fmt(b) << "\"/>\n";
    }
  }
  os << "</g>\n";

  if (plan) {
    const double sw = std::max(0.6, px / 6);
    for (const PlanDocument::Robot& r : plan->plans) {
      const char* color = detail::kPalette[r.robot % detail::kPalette.size()];
      os << "<g id=\"robot-" << r.robot + 1 << "\" stroke=\"" << color << "\" fill=\"none\" stroke-linejoin=\"round\">\n";
      os << "<polyline stroke-width=\"" << detail::fmt(sw) << "\" points=\"" << cv.points(r.path) << "\"/>\n";
      const std::string dash = "stroke-width=\"" + detail::fmt(sw * 0.7) + "\" stroke-dasharray=\"" +
                               detail::fmt(px * 0.4) + " " + detail::fmt(px * 0.25) + "\"";
      auto leg = [&](const std::vector<Cell>& cells) {
        if (cells.size() > 1) os << "<polyline " << dash << " points=\"" << cv.points(cells) << "\"/>\n";
      };
      leg(r.approach);
      leg(r.ret);
      for (const auto& t : r.transits) leg(t.path);
      for (const auto& f : r.refills) {
        leg(f.outbound);
        leg(f.inbound);
      }
      os << "</g>\n";
    }
  }

  os << "<g id=\"depots\" fill=\"#ffd400\" stroke=\"#000000\" stroke-width=\"" << detail::fmt(std::max(0.4, px / 16))
     << "\">\n";
  const std::size_t shown = plan ? std::max<std::size_t>(plan->depots.size(), 1) : scene.depots.size();
  for (std::size_t i = 0; i < shown && i < scene.depots.size(); ++i) {
    const Cell d = scene.depots[i];
    os << "<polygon points=\"" << detail::star(cv.x(d.x), cv.y(d.y), std::max(3.0, px * 0.45)) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace mstc

#endif  // MSTC_SVG_HPP_
