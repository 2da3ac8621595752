// Copyright 2026 The torus-route Authors
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


#ifndef TORUS_ROUTE_ALGORITHMS_SSSP_HPP
#define TORUS_ROUTE_ALGORITHMS_SSSP_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "torus_route/algorithms/generation.hpp"
#include "torus_route/algorithms/route_search.hpp"

namespace torus_route {

struct SsspOptions {
  // false: skip the unique-route stage and send every pair through the
  // grouped shortest-path stage.
  bool unique_stage = true;
};

/// Scratch arrays for build_sssp, reused across calls.
class SsspWorkspace {
 public:
  explicit SsspWorkspace(const RoutingGraph& rg)
      : stamp_(rg.vertex_count(), 0), level_(rg.vertex_count(), 0),
        dist_(rg.vertex_count(), 0), parent_(rg.vertex_count(), kNoParent) {}

  std::vector<VertexId> path_to(VertexId v) const {
    std::vector<VertexId> path;
    for (; v != kNoParent; v = parent_[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  bool reached(VertexId v) const { return stamp_[v] == current_; }
  std::uint64_t distance(VertexId v) const { return dist_[v]; }

 private:
  friend std::size_t build_sssp(const RoutingGraph&, NodeId, std::span<const NodeId>,
                                const ChannelLoads&, std::uint64_t, SsspWorkspace&);
  std::uint32_t current_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<int> level_;
  std::vector<std::uint64_t> dist_;
  std::vector<VertexId> parent_;
};

/// Level-synchronous search with relaxation from Begin(source). An edge
/// costs `base` plus the load of its link. Paths keep minimal hop count:
/// a vertex only accepts parents from the level before its own, and its
/// distance is final when that level completes. Stops once every End in
/// `targets` is reached. Returns how many targets were reached.
inline std::size_t build_sssp(const RoutingGraph& rg, NodeId source, std::span<const NodeId> targets,
                              const ChannelLoads& weights, std::uint64_t base, SsspWorkspace& ws) {
  if (++ws.current_ == 0) {
    std::fill(ws.stamp_.begin(), ws.stamp_.end(), 0);
    ws.current_ = 1;
  }
  const std::uint32_t stamp = ws.current_;
  std::vector<char> wanted(rg.vertex_count(), 0);
  for (NodeId d : targets) wanted[rg.end(d)] = 1;

  const VertexId root = rg.begin(source);
  ws.stamp_[root] = stamp;
  ws.level_[root] = 0;
  ws.dist_[root] = 0;
  ws.parent_[root] = kNoParent;
  std::size_t processed = 0;
  std::vector<VertexId> frontier{root}, next;
  for (int level = 0; !frontier.empty(); ++level) {
    next.clear();
    for (VertexId u : frontier) {
      for (const RGEdge& e : rg.out_edges(u)) {
        const std::uint64_t cost =
            ws.dist_[u] + base + (e.link == kNoLink ? 0 : weights[e.link]);
        const VertexId v = e.to;
        if (ws.stamp_[v] != stamp) {
          ws.stamp_[v] = stamp;
          ws.level_[v] = level + 1;
          ws.dist_[v] = cost;
          ws.parent_[v] = u;
          next.push_back(v);
          if (wanted[v]) ++processed;
        } else if (ws.level_[v] == level + 1 && cost < ws.dist_[v]) {
          ws.dist_[v] = cost;
          ws.parent_[v] = u;
        }
      }
    }
    if (processed == targets.size()) break;
    std::swap(frontier, next);
  }
  return processed;
}

inline GenerationResult build_rt_sssp(const RoutingGraph& rg, std::span<const NodeId> nodes,
                                      SsspOptions options = {}) {
  const Topology& t = rg.topology();
  const TurnSet relaxed(rg.augmentation());
  GenerationResult out{RoutingTable(t), ChannelLoads(t.channel_slots(), 0), {}};
  const std::uint64_t n = nodes.size();
  const std::uint64_t base = std::max<std::uint64_t>(1, n * n);
  SsspWorkspace ws(rg);

  // (turns, length, src) -> pending destinations
  std::map<std::tuple<int, int, NodeId>, std::vector<NodeId>> groups;
  std::vector<std::pair<NodeId, NodeId>> unroutable;
  for (NodeId src : nodes) {
    const auto summary = summarize_routes_from(rg, src);
    std::vector<NodeId> unique;
    for (NodeId dst : nodes) {
      if (dst == src) continue;
      ++out.stats.total_pairs;
      const PairSummary& s = summary[dst];
      if (s.length == kUnreachable) {
        unroutable.push_back({src, dst});
      } else if (options.unique_stage && s.routes == 1) {
        unique.push_back(dst);
      } else {
        groups[{s.min_turns, s.length, src}].push_back(dst);
      }
    }
    if (unique.empty() || !unroutable.empty()) continue;
    // Any minimal search finds the only route; loads do not matter.
    ChannelLoads zero(t.channel_slots(), 0);
    build_sssp(rg, src, unique, zero, 1, ws);
    for (NodeId dst : unique) {
      Route r = route_from_path(rg, ws.path_to(rg.end(dst)), relaxed);
      add_route_load(t, r, out.weights);
      out.table.set(std::move(r));
      ++out.stats.unique_pairs;
    }
  }
  if (!unroutable.empty()) throw UnroutableError(t, std::move(unroutable));

  std::vector<char> used(t.channel_slots(), 0);
  for (auto& [key, pending] : groups) {
    const NodeId src = std::get<2>(key);
    while (!pending.empty()) {
      ++out.stats.sssp_calls;
      const std::size_t reached = build_sssp(rg, src, pending, out.weights, base, ws);
      if (reached != pending.size()) throw std::logic_error("build_sssp lost a reachable target");
      std::fill(used.begin(), used.end(), 0);
      std::vector<Route> accepted;
      std::vector<NodeId> rest;
      for (NodeId dst : pending) {
        Route r = route_from_path(rg, ws.path_to(rg.end(dst)), relaxed);
        const auto channels = route_channels(t, r);
        if (std::ranges::any_of(channels, [&](ChannelId c) { return used[c] != 0; })) {
          rest.push_back(dst);
          continue;
        }
        for (ChannelId c : channels) used[c] = 1;
        accepted.push_back(std::move(r));
      }
      for (Route& r : accepted) {
        add_route_load(t, r, out.weights);
        out.table.set(std::move(r));
      }
      pending = std::move(rest);
    }
  }
  return out;
}

inline GenerationResult build_rt_sssp(const RoutingGraph& rg, SsspOptions options = {}) {
  const auto nodes = rg.topology().live_nodes();
  return build_rt_sssp(rg, nodes, options);
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ALGORITHMS_SSSP_HPP
