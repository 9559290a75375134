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

#ifndef MSTC_TESTS_SUPPORT_HPP_
#define MSTC_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "mstc.hpp"

namespace testing_support {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("mstc_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Flat open scene with the given depots.
inline mstc::Scene flat_scene(int w, int h, std::vector<mstc::Cell> depots) {
  mstc::Scene s = mstc::Scene::empty(w, h);
  s.depots = std::move(depots);
  return s;
}

/// Scene whose elevation rises by `rise` meters per cell eastwards.
inline mstc::Scene ramp_scene(int w, int h, double rise) {
  mstc::Scene s = mstc::Scene::empty(w, h);
  s.elevation.emplace(s.shape().size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) (*s.elevation)[s.shape().id({x, y})] = rise * x;
  }
  s.depots = {{0, 0}};
  return s;
}

/// Random weighted scene: value-noise relief, blocked blocks, depots on the loop.
inline mstc::Scene weighted_scene(std::uint64_t seed, int size, int robots, mstc::DepotLayout layout,
                                  double relief = 2.0, double blocked = 0.1) {
  mstc::RandomSceneOptions o;
  o.width = o.height = size;
  o.robots = robots;
  o.layout = layout;
  o.relief = relief;
  o.blocked_fraction = blocked;
  return mstc::random_scene(seed, o);
}

/// DEM fixture without depots or obstacles, cells at random heights.
inline mstc::Scene rough_dem(std::uint64_t seed, int w, int h, double amplitude) {
  std::mt19937_64 rng(seed);
  mstc::Scene s = mstc::Scene::empty(w, h);
  s.elevation = mstc::value_noise(s.shape(), 2, amplitude, rng);
  for (int i = 0; i < w * h / 12; ++i) {
    s.block({static_cast<int>(rng() % static_cast<unsigned>(w)), static_cast<int>(rng() % static_cast<unsigned>(h))});
  }
  return s;
}

}  // namespace testing_support

#endif  // MSTC_TESTS_SUPPORT_HPP_
