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

// Min-max partitioning of a coverage loop among k robots.
//
// A partition is k key indices on the loop; segment i runs from keys[i] up to
// (but excluding) keys[i + 1], cyclically. A robot leaves its depot, drives to
// its segment start, services the segment in loop order (detouring home to
// refill every c serviced cells) and drives back to its depot.

#ifndef MSTC_PARTITION_HPP_
#define MSTC_PARTITION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mstc/graph.hpp"
#include "mstc/stc.hpp"
#include "mstc/types.hpp"

namespace mstc {

struct PartitionSet {
  std::size_t loop_size = 0;
  std::vector<std::size_t> keys;  // cyclic order, each < loop_size
  std::vector<double> weights;    // per segment, filled by evaluate()

  std::size_t count() const { return keys.size(); }
  std::size_t start(std::size_t i) const { return keys[i]; }

  std::size_t size(std::size_t i) const {
    if (keys.size() == 1) return loop_size;
    const std::size_t next = keys[(i + 1) % keys.size()];
    return (next + loop_size - keys[i] - 1) % loop_size + 1;
  }

  /// Loop indices of segment i in service order.
  std::vector<std::size_t> segment(std::size_t i) const {
    std::vector<std::size_t> out(size(i));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (keys[i] + j) % loop_size;
    return out;
  }

  /// Distinct keys in cyclic order, so segments tile the loop exactly once.
  bool valid() const {
    if (keys.empty() || keys.size() > loop_size) return false;
    std::size_t total = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] >= loop_size) return false;
      total += size(i);
    }
    return total == loop_size && std::set<std::size_t>(keys.begin(), keys.end()).size() == keys.size();
  }

  double max_weight() const { return *std::max_element(weights.begin(), weights.end()); }
};

/// Equal node counts; keys at floor(j * L / k) past `origin`.
inline PartitionSet naive_partition(std::size_t loop_size, std::size_t k, std::size_t origin = 0) {
  if (k < 1) throw Error("naive_partition: need at least one segment");
  if (k > loop_size) {
    throw Error("naive_partition: " + std::to_string(k) + " robots for a loop of " +
                std::to_string(loop_size) + " cells");
  }
  PartitionSet p;
  p.loop_size = loop_size;
  p.keys.resize(k);
  for (std::size_t j = 0; j < k; ++j) p.keys[j] = (origin + j * loop_size / k) % loop_size;
  return p;
}

/// Segment costs in O(1 + trips) from loop prefix sums and per-robot depot
/// distance tables indexed by loop position.
class CostModel {
 public:
  CostModel(std::vector<double> hop_weights, std::vector<std::vector<double>> depot_dist,
            Capacity capacity)
      : capacity_(capacity), depot_dist_(std::move(depot_dist)) {
    const std::size_t n = hop_weights.size();
    if (n == 0) throw Error("cost model: empty loop");
    for (const auto& table : depot_dist_) {
      if (table.size() != n) throw Error("cost model: depot distance table size mismatch");
    }
    prefix_.assign(2 * n + 1, 0.0);
    for (std::size_t i = 0; i < 2 * n; ++i) prefix_[i + 1] = prefix_[i] + hop_weights[i % n];
  }

  static CostModel from_graph(const CoverageLoop& loop, const std::vector<ShortestPathTree>& depot_trees,
                              Capacity capacity) {
    std::vector<std::vector<double>> dist;
    dist.reserve(depot_trees.size());
    for (const ShortestPathTree& t : depot_trees) {
      std::vector<double> row(loop.size());
      for (std::size_t i = 0; i < loop.size(); ++i) {
        if (!t.reachable(loop.nodes[i])) throw Error("internal: loop cell unreachable from a depot");
        row[i] = t.dist[loop.nodes[i]];
      }
      dist.push_back(std::move(row));
    }
    return CostModel(loop.edge_weights, std::move(dist), capacity);
  }

  std::size_t loop_size() const { return (prefix_.size() - 1) / 2; }
  std::size_t robots() const { return depot_dist_.size(); }
  Capacity capacity() const { return capacity_; }

  double depot_distance(std::size_t robot, std::size_t index) const {
    return depot_dist_[robot][index % loop_size()];
  }

  /// Coverage hops from `start` over `hops` consecutive loop edges.
  double hop_sum(std::size_t start, std::size_t hops) const {
    const std::size_t s = start % loop_size();
    return prefix_[s + hops] - prefix_[s];
  }

  /// Cost for `robot` to service `len` cells from `start` onwards.
  double arc_cost(std::size_t start, std::size_t len, std::size_t robot) const {
    if (len == 0) return 0.0;
    double cost = depot_distance(robot, start) + hop_sum(start, len - 1) +
                  depot_distance(robot, start + len - 1);
    if (capacity_.bounded()) {
      const auto c = static_cast<std::size_t>(capacity_.value());
      for (std::size_t served = c; served < len; served += c) {
        cost += 2.0 * depot_distance(robot, start + served - 1);
      }
    }
    return cost;
  }

 private:
  Capacity capacity_;
  std::vector<std::vector<double>> depot_dist_;
  std::vector<double> prefix_;
};

/// robot_of[i] = robot servicing segment i.
using Assignment = std::vector<std::size_t>;

inline void evaluate(const CostModel& model, PartitionSet& p, const Assignment& robot_of) {
  p.weights.resize(p.count());
  for (std::size_t i = 0; i < p.count(); ++i) p.weights[i] = model.arc_cost(p.start(i), p.size(i), robot_of[i]);
}

/// Greedy matching of robots to segments by cheapest approach leg.
/// Ties break on (robot, segment) order.
inline Assignment greedy_assignment(const CostModel& model, const PartitionSet& p,
                                    const std::vector<std::size_t>& robots) {
  if (robots.size() < p.count()) throw Error("greedy_assignment: fewer robots than segments");
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t r : robots) {
    for (std::size_t i = 0; i < p.count(); ++i) pairs.emplace_back(model.depot_distance(r, p.start(i)), r, i);
  }
  std::sort(pairs.begin(), pairs.end());
  Assignment robot_of(p.count(), std::numeric_limits<std::size_t>::max());
  std::set<std::size_t> used;
  std::size_t placed = 0;
  for (const auto& [cost, r, i] : pairs) {
    if (placed == p.count()) break;
    if (used.count(r) || robot_of[i] != std::numeric_limits<std::size_t>::max()) continue;
    robot_of[i] = r;
    used.insert(r);
    ++placed;
  }
  return robot_of;
}

inline Assignment greedy_assignment(const CostModel& model, const PartitionSet& p) {
  std::vector<std::size_t> robots(p.count());
  std::iota(robots.begin(), robots.end(), std::size_t{0});
  return greedy_assignment(model, p, robots);
}

/// True when `a` beats `b` in leximax order (largest weight first), by more
/// than a relative tolerance.
inline bool leximax_better(std::vector<double> a, std::vector<double> b, double rel_tol = 1e-9) {
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  const double tol = rel_tol * std::max(1.0, b.empty() ? 1.0 : std::abs(b.front()));
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return false;
}

struct CutOptions {
  std::optional<std::size_t> size_cap;  // no segment may grow beyond this many cells
};

namespace detail {

struct Chain {
  bool forward = true;             // cells flow in loop direction, from max to min
  std::vector<std::size_t> moved;  // keys that shift
  std::vector<std::size_t> touched;
};

/// Chain of segments through which cells flow from max_idx to min_idx.
/// forward: segments max, max+1, ..., min; keys max+1 .. min move back.
/// backward: segments min, min+1, ..., max; keys min+1 .. max move ahead.
inline Chain make_chain(std::size_t k, std::size_t min_idx, std::size_t max_idx, bool forward) {
  Chain ch;
  ch.forward = forward;
  const std::size_t first = forward ? max_idx : min_idx;
  const std::size_t last = forward ? min_idx : max_idx;
  for (std::size_t i = first;; i = (i + 1) % k) {
    ch.touched.push_back(i);
    if (i != first) ch.moved.push_back(i);
    if (i == last) break;
  }
  return ch;
}

inline PartitionSet shift_chain(const PartitionSet& p, const Chain& ch, std::size_t t) {
  PartitionSet q = p;
  const std::size_t L = p.loop_size;
  for (std::size_t key : ch.moved) {
    q.keys[key] = ch.forward ? (p.keys[key] + L - t % L) % L : (p.keys[key] + t) % L;
  }
  return q;
}

}  // namespace detail

/// Moves cells from the heaviest segment towards the lightest through the
/// segments between them, binary-searching the shift amount.
///
/// In-between segments keep their sizes. Both ways round the loop are
/// searched; each keeps the shift with the smallest max weight over its
/// touched segments, and the better of the two (leximax over all segments)
/// is returned. The input comes back unchanged if nothing beat it.
inline PartitionSet balanced_cut(const PartitionSet& p, std::size_t min_idx, std::size_t max_idx,
                                 const CostModel& model, const Assignment& robot_of,
                                 const CutOptions& options = {}) {
  const std::size_t k = p.count();
  if (min_idx == max_idx || min_idx >= k || max_idx >= k) {
    throw Error("balanced_cut: need two distinct segments");
  }
  const std::size_t min_size = p.size(min_idx);
  const std::size_t max_size = p.size(max_idx);

  // Largest shift that keeps the donor non-empty and the receiver under the cap.
  std::int64_t feasible = static_cast<std::int64_t>(max_size) - 1;
  if (options.size_cap) {
    feasible = std::min<std::int64_t>(feasible, static_cast<std::int64_t>(*options.size_cap) -
                                                    static_cast<std::int64_t>(min_size));
  }
  feasible = std::max<std::int64_t>(feasible, 0);

  PartitionSet base = p;
  if (base.weights.size() != k) evaluate(model, base, robot_of);

  auto search = [&](const detail::Chain& chain) {
    auto chain_max = [&](const PartitionSet& q) {
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t i : chain.touched) m = std::max(m, q.weights[i]);
      return m;
    };
    PartitionSet best = base;
    double best_score = chain_max(base);
    std::int64_t left = 0;
    std::int64_t right = std::min<std::int64_t>(static_cast<std::int64_t>(min_size + max_size), feasible);
    while (left <= right) {
      const std::int64_t shift = left + (right - left) / 2;
      PartitionSet cand = detail::shift_chain(base, chain, static_cast<std::size_t>(shift));
      for (std::size_t i : chain.touched) {
        cand.weights[i] = model.arc_cost(cand.start(i), cand.size(i), robot_of[i]);
      }
      const double score = chain_max(cand);
      // Keep shifting while the receiver is still the lighter of the two.
      const bool receiver_lighter = cand.weights[min_idx] < cand.weights[max_idx];
      if (score < best_score) {
        best_score = score;
        best = std::move(cand);
      }
      if (receiver_lighter) {
        left = shift + 1;
      } else {
        right = shift - 1;
      }
    }
    return best;
  };

  PartitionSet fwd = search(detail::make_chain(k, min_idx, max_idx, true));
  PartitionSet bwd = search(detail::make_chain(k, min_idx, max_idx, false));
  return leximax_better(bwd.weights, fwd.weights) ? bwd : fwd;
}

struct BalanceOptions {
  std::optional<std::size_t> size_cap;
  std::size_t max_iters = 0;  // 0: 64 * segment count
};

struct PartitionResult {
  PartitionSet partition;
  Assignment robot_of;
  std::size_t iterations = 0;
  std::vector<double> max_history;  // max weight after each accepted iteration
};

/// Greedy min-max improvement: repeatedly balance the heaviest segment
/// against the lightest one (falling back to the next lightest partners when
/// that cut does not help) and keep the result only if it improves.
inline PartitionResult balance(const CostModel& model, PartitionSet p, Assignment robot_of,
                               const BalanceOptions& options = {}) {
  const std::size_t k = p.count();
  evaluate(model, p, robot_of);
  PartitionResult result;
  result.max_history.push_back(p.max_weight());
  const std::size_t max_iters = options.max_iters ? options.max_iters : 64 * k;
  const CutOptions cut{options.size_cap};

  while (k > 1 && result.iterations < max_iters) {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p.weights[a] < p.weights[b]; });
    std::size_t heaviest = order.back();
    for (std::size_t i = 0; i < k; ++i) {
      if (p.weights[i] == p.weights[heaviest]) {
        heaviest = i;
        break;
      }
    }
    if (p.weights[heaviest] <= p.weights[order.front()]) break;

    bool improved = false;
    for (std::size_t partner : order) {
      if (partner == heaviest) continue;
      PartitionSet q = balanced_cut(p, partner, heaviest, model, robot_of, cut);
      if (leximax_better(q.weights, p.weights)) {
        p = std::move(q);
        improved = true;
        break;
      }
    }
    if (!improved) break;
    ++result.iterations;
    result.max_history.push_back(p.max_weight());
  }
  result.partition = std::move(p);
  result.robot_of = std::move(robot_of);
  return result;
}

/// Local polish after balancing: moves one key at a time to its best spot
/// between its neighbours, rotates all keys together, then tries swapping
/// the robots of two segments.
/// Each accepted step is a strict leximax improvement, so this terminates.
inline std::size_t refine(const CostModel& model, PartitionSet& p, Assignment& robot_of,
                          std::optional<std::size_t> size_cap, std::size_t max_rounds = 64) {
  const std::size_t k = p.count();
  const std::size_t L = p.loop_size;
  if (k < 2) return 0;
  evaluate(model, p, robot_of);
  auto fits = [&](std::size_t n) { return !size_cap || n <= *size_cap; };
  std::size_t accepted = 0;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t prev = (i + k - 1) % k;
      const std::size_t lo = p.keys[prev];
      // Span of segments prev and i together.
      const std::size_t span = p.size(prev) + p.size(i);
      PartitionSet best = p;
      for (std::size_t a = 1; a < span; ++a) {
        if (!fits(a) || !fits(span - a)) continue;
        PartitionSet q = p;
        q.keys[i] = (lo + a) % L;
        q.weights[prev] = model.arc_cost(q.start(prev), a, robot_of[prev]);
        q.weights[i] = model.arc_cost(q.start(i), span - a, robot_of[i]);
        if (leximax_better(q.weights, best.weights)) best = std::move(q);
      }
      if (best.keys != p.keys) {
        p = std::move(best);
        changed = true;
        ++accepted;
      }
    }
    // Rotate every key together; sizes stay, approach legs change.
    {
      PartitionSet best = p;
      for (std::size_t t = 1; t < L; ++t) {
        PartitionSet q = p;
        for (std::size_t& key : q.keys) key = (key + t) % L;
        evaluate(model, q, robot_of);
        if (leximax_better(q.weights, best.weights)) best = std::move(q);
      }
      if (best.keys != p.keys) {
        p = std::move(best);
        changed = true;
        ++accepted;
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        Assignment alt = robot_of;
        std::swap(alt[i], alt[j]);
        PartitionSet q = p;
        q.weights[i] = model.arc_cost(q.start(i), q.size(i), alt[i]);
        q.weights[j] = model.arc_cost(q.start(j), q.size(j), alt[j]);
        if (leximax_better(q.weights, p.weights)) {
          p = std::move(q);
          robot_of = std::move(alt);
          changed = true;
          ++accepted;
        }
      }
    }
    if (!changed) break;
  }
  return accepted;
}

namespace detail {

/// Re-matches robots to the final segments; keeps the new matching only if
/// it does not raise the max weight.
inline void rematch(const CostModel& model, PartitionResult& r, const std::vector<std::size_t>& robots) {
  const Assignment alt = greedy_assignment(model, r.partition, robots);
  if (alt == r.robot_of) return;
  PartitionSet q = r.partition;
  evaluate(model, q, alt);
  if (q.max_weight() <= r.partition.max_weight()) {
    r.partition = std::move(q);
    r.robot_of = alt;
  }
}

inline std::vector<std::size_t> first_robots(std::size_t k) {
  std::vector<std::size_t> v(k);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace detail

inline PartitionResult naive_mstc(const CostModel& model, std::size_t k) {
  if (k > model.robots()) throw Error("naive_mstc: more segments than robots");
  PartitionResult r;
  r.partition = naive_partition(model.loop_size(), k);
  r.robot_of = greedy_assignment(model, r.partition, detail::first_robots(k));
  evaluate(model, r.partition, r.robot_of);
  r.max_history.push_back(r.partition.max_weight());
  return r;
}

/// Balanced-MSTC*: start from the naive split and balance. With a finite
/// capacity no segment grows past c cells.
///
/// The greedy cut search settles in local optima, so it is restarted from
/// naive splits whose origin is spread over one naive segment length (at
/// most `starts` of them; origins past that only relabel the same splits).
/// Every run is polished by refine() and the leximax-best result is kept.
inline PartitionResult balanced_mstc(const CostModel& model, std::size_t k, std::size_t max_iters = 0,
                                     std::size_t starts = 16) {
  if (k > model.robots()) throw Error("balanced_mstc: more segments than robots");
  const std::size_t L = model.loop_size();
  const std::size_t span = (L + k - 1) / k;
  const std::size_t runs = std::clamp<std::size_t>(span, 1, std::max<std::size_t>(starts, 1));
  BalanceOptions options;
  options.max_iters = max_iters;
  if (model.capacity().bounded()) options.size_cap = static_cast<std::size_t>(model.capacity().value());

  PartitionResult best;
  for (std::size_t s = 0; s < runs; ++s) {
    const PartitionSet p0 = naive_partition(L, k, s * span / runs);
    const Assignment a0 = greedy_assignment(model, p0, detail::first_robots(k));
    PartitionResult r = balance(model, p0, a0, options);
    detail::rematch(model, r, detail::first_robots(k));
    r.iterations += refine(model, r.partition, r.robot_of, options.size_cap);
    r.max_history.push_back(r.partition.max_weight());
    if (s == 0) {
      best = std::move(r);
    } else {
      best.iterations += r.iterations;
      if (leximax_better(r.partition.weights, best.partition.weights)) {
        best.partition = std::move(r.partition);
        best.robot_of = std::move(r.robot_of);
        best.max_history.push_back(best.partition.max_weight());
      }
    }
  }
  return best;
}

/// Segment counts after merging n sub-partitions into k groups: n / k each,
/// the first n mod k groups take one more.
inline std::vector<std::size_t> merge_group_sizes(std::size_t n, std::size_t k) {
  std::vector<std::size_t> sizes(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

struct CapacityResult {
  PartitionResult merged;                 // k segments
  std::size_t sub_partitions = 0;         // n
  std::optional<PartitionSet> sub;       // the n-way split before merging, if any
};

/// Limited-capacity MSTC*. If one load covers a naive share, this is
/// balanced_mstc. Otherwise the loop is balanced among n = sum of trip counts
/// virtual robots and runs of adjacent sub-partitions are merged into k
/// segments.
inline CapacityResult capacity_partition(const CostModel& model, std::size_t k, std::size_t max_iters = 0) {
  const Capacity cap = model.capacity();
  const std::size_t L = model.loop_size();
  if (k > model.robots()) throw Error("capacity_partition: more segments than robots");
  const std::size_t share = (L + k - 1) / k;
  CapacityResult out;
  if (cap.fits(share)) {
    out.merged = balanced_mstc(model, k, max_iters);
    out.sub_partitions = k;
    return out;
  }

  const PartitionSet naive_k = naive_partition(L, k);
  std::size_t n = 0;
  for (std::size_t i = 0; i < k; ++i) n += cap.trips(naive_k.size(i));
  n = std::min(n, L);
  out.sub_partitions = n;

  const PartitionSet sub = naive_partition(L, n);
  const std::vector<std::size_t> group_sizes = merge_group_sizes(n, k);
  std::vector<std::size_t> group_first(k, 0);
  for (std::size_t i = 1; i < k; ++i) group_first[i] = group_first[i - 1] + group_sizes[i - 1];

  // Match robots to groups by their first sub-partition; virtual robots inherit.
  PartitionSet heads;
  heads.loop_size = L;
  for (std::size_t i = 0; i < k; ++i) heads.keys.push_back(sub.keys[group_first[i]]);
  const Assignment group_robot = greedy_assignment(model, heads, detail::first_robots(k));
  Assignment virtual_robot(n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < group_sizes[i]; ++j) virtual_robot[group_first[i] + j] = group_robot[i];
  }

  BalanceOptions options;
  options.max_iters = max_iters;
  options.size_cap = static_cast<std::size_t>(cap.value());
  PartitionResult balanced = balance(model, sub, virtual_robot, options);

  PartitionResult merged;
  merged.partition.loop_size = L;
  for (std::size_t i = 0; i < k; ++i) merged.partition.keys.push_back(balanced.partition.keys[group_first[i]]);
  merged.robot_of = group_robot;
  merged.iterations = balanced.iterations;
  evaluate(model, merged.partition, merged.robot_of);
  merged.max_history.push_back(merged.partition.max_weight());
  detail::rematch(model, merged, detail::first_robots(k));
  // Merged segments already pay for their refills, so polish them directly.
  merged.iterations += refine(model, merged.partition, merged.robot_of, std::nullopt);
  merged.max_history.push_back(merged.partition.max_weight());
  const PartitionResult naive = naive_mstc(model, k);
  if (leximax_better(naive.partition.weights, merged.partition.weights)) {
    merged.partition = naive.partition;
    merged.robot_of = naive.robot_of;
  }
  out.sub = balanced.partition;
  out.merged = std::move(merged);
  return out;
}

// ---------------------------------------------------------------------------
// Robot plans

struct RefillEvent {
  std::size_t after = 0;  // service index of the break node
  NodeId node = kNoNode;
  double cost = 0.0;      // break -> depot -> break
  std::vector<NodeId> outbound;
  std::vector<NodeId> inbound;
};

/// A non-adjacent step between two consecutive services.
struct Transit {
  std::size_t after = 0;
  double cost = 0.0;
  std::vector<NodeId> path;
};

struct RobotPlan {
  std::size_t robot = 0;
  NodeId depot = kNoNode;
  std::vector<NodeId> path;  // serviced cells, in order
  std::vector<NodeId> approach;
  double approach_cost = 0.0;
  std::vector<NodeId> ret;
  double return_cost = 0.0;
  double coverage_cost = 0.0;  // hops between consecutive services, incl. transits
  std::vector<Transit> transits;
  std::vector<RefillEvent> refills;
  std::size_t trips = 1;
  double weight = 0.0;
};

namespace detail {

inline std::vector<NodeId> join(std::vector<NodeId> a, const std::vector<NodeId>& b) {
  if (!a.empty() && !b.empty() && a.back() == b.front()) a.pop_back();
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// Full route and cost for one robot servicing `services` in order.
///
/// `home_after` lists service indices after which the robot detours through
/// its depot before the next service. Other non-adjacent steps use a
/// shortest path.
inline RobotPlan build_robot_plan(const CoveringGraph& g, const ShortestPathTree& depot_tree,
                                  std::size_t robot, std::vector<NodeId> services, Capacity capacity,
                                  const std::set<std::size_t>& home_after = {}) {
  if (services.empty()) throw Error("build_robot_plan: empty segment");
  RobotPlan plan;
  plan.robot = robot;
  plan.depot = depot_tree.source;
  plan.path = std::move(services);
  const auto& path = plan.path;

  plan.approach = depot_tree.path_to(path.front());
  plan.approach_cost = depot_tree.dist[path.front()];
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (home_after.count(i)) {
      Transit t;
      t.after = i;
      t.cost = depot_tree.dist[path[i]] + depot_tree.dist[path[i + 1]];
      t.path = detail::join(depot_tree.path_from(path[i]), depot_tree.path_to(path[i + 1]));
      plan.coverage_cost += t.cost;
      plan.transits.push_back(std::move(t));
    } else if (const auto w = g.weight(path[i], path[i + 1])) {
      plan.coverage_cost += *w;
    } else {
      PathResult sp = shortest_path(g, path[i], path[i + 1]);
      plan.coverage_cost += sp.cost;
      plan.transits.push_back({i, sp.cost, std::move(sp.path)});
    }
  }
  plan.trips = capacity.trips(path.size());
  if (capacity.bounded()) {
    const auto c = static_cast<std::size_t>(capacity.value());
    for (std::size_t served = c; served < path.size(); served += c) {
      RefillEvent e;
      e.after = served - 1;
      e.node = path[e.after];
      e.cost = 2.0 * depot_tree.dist[e.node];
      e.outbound = depot_tree.path_from(e.node);
      e.inbound = depot_tree.path_to(e.node);
      plan.refills.push_back(std::move(e));
    }
  }
  plan.ret = depot_tree.path_from(path.back());
  plan.return_cost = depot_tree.dist[path.back()];

  plan.weight = plan.approach_cost + plan.coverage_cost + plan.return_cost;
  for (const RefillEvent& e : plan.refills) plan.weight += e.cost;
  return plan;
}

/// Cost of servicing `segment` from `depot` with capacity c: approach,
/// coverage hops, refill round trips, final return.
inline double segment_cost(const std::vector<NodeId>& segment, NodeId depot, Capacity capacity,
                           const CoveringGraph& g) {
  return build_robot_plan(g, dijkstra(g, depot), 0, segment, capacity).weight;
}

/// Plans for every segment, ordered by robot.
inline std::vector<RobotPlan> make_plans(const CoveringGraph& g, const CoverageLoop& loop,
                                         const std::vector<ShortestPathTree>& depot_trees,
                                         const PartitionSet& p, const Assignment& robot_of,
                                         Capacity capacity) {
  std::vector<RobotPlan> plans;
  for (std::size_t i = 0; i < p.count(); ++i) {
    std::vector<NodeId> services;
    for (std::size_t idx : p.segment(i)) services.push_back(loop.nodes[idx]);
    plans.push_back(build_robot_plan(g, depot_trees[robot_of[i]], robot_of[i], std::move(services), capacity));
  }
  std::sort(plans.begin(), plans.end(), [](const RobotPlan& a, const RobotPlan& b) { return a.robot < b.robot; });
  return plans;
}

inline double max_weight(const std::vector<RobotPlan>& plans) {
  if (plans.empty()) throw Error("max_weight: no plans");
  double m = plans.front().weight;
  for (const RobotPlan& p : plans) m = std::max(m, p.weight);
  return m;
}

inline double total_weight(const std::vector<RobotPlan>& plans) {
  double s = 0.0;
  for (const RobotPlan& p : plans) s += p.weight;
  return s;
}

}  // namespace mstc

#endif  // MSTC_PARTITION_HPP_
