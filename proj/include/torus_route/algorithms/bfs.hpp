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


#ifndef TORUS_ROUTE_ALGORITHMS_BFS_HPP
#define TORUS_ROUTE_ALGORITHMS_BFS_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "torus_route/algorithms/generation.hpp"
#include "torus_route/algorithms/route_search.hpp"

namespace torus_route {

/// Breadth-first tree from `source`. Each level is visited in ascending
/// order of the summed weight of a vertex's outgoing edges, ties by id;
/// the first parent to reach a vertex keeps it. Returns one route per
/// live destination (ascending id) and adds 1 to `weights` on every link
/// those routes use.
inline std::vector<Route> build_bfs_routes(const RoutingGraph& rg, NodeId source,
                                           ChannelLoads& weights, const TurnSet& relaxed) {
  const Topology& t = rg.topology();
  std::vector<VertexId> parent(rg.vertex_count(), kNoParent);
  std::vector<char> seen(rg.vertex_count(), 0);
  const VertexId root = rg.begin(source);
  seen[root] = 1;

  auto out_weight = [&](VertexId v) {
    std::uint64_t w = 0;
    for (const RGEdge& e : rg.out_edges(v)) {
      if (e.link != kNoLink) w += weights[e.link];
    }
    return w;
  };

  std::vector<VertexId> level{root};
  std::vector<std::pair<std::uint64_t, VertexId>> order;
  while (!level.empty()) {
    order.clear();
    for (VertexId v : level) order.push_back({out_weight(v), v});
    std::sort(order.begin(), order.end());
    std::vector<VertexId> next;
    for (const auto& [w, v] : order) {
      for (const RGEdge& e : rg.out_edges(v)) {
        if (seen[e.to]) continue;
        seen[e.to] = 1;
        parent[e.to] = v;
        next.push_back(e.to);
      }
    }
    level = std::move(next);
  }

  std::vector<Route> routes;
  std::vector<std::pair<NodeId, NodeId>> missing;
  for (NodeId dst : t.live_nodes()) {
    if (dst == source) continue;
    if (!seen[rg.end(dst)]) {
      missing.push_back({source, dst});
      continue;
    }
    routes.push_back(route_from_path(rg, path_from_parents(parent, rg.end(dst)), relaxed));
  }
  if (!missing.empty()) throw UnroutableError(t, std::move(missing));
  for (const Route& r : routes) add_route_load(t, r, weights);
  return routes;
}

/// Sources in processing order: the first node, then repeatedly the
/// unprocessed node farthest from the previous source.
inline std::vector<NodeId> remote_first_order(const Topology& t, std::span<const NodeId> nodes) {
  std::vector<NodeId> order;
  if (nodes.empty()) return order;
  std::vector<NodeId> rest(nodes.begin() + 1, nodes.end());
  NodeId current = nodes.front();
  order.push_back(current);
  while (!rest.empty()) {
    current = t.most_remote(rest, current);
    rest.erase(std::find(rest.begin(), rest.end(), current));
    order.push_back(current);
  }
  return order;
}

inline GenerationResult build_rt_bfs(const RoutingGraph& rg, std::span<const NodeId> nodes) {
  const Topology& t = rg.topology();
  const TurnSet relaxed(rg.augmentation());
  GenerationResult out{RoutingTable(t), ChannelLoads(t.channel_slots(), 0), {}};
  for (NodeId source : remote_first_order(t, nodes)) {
    for (Route& r : build_bfs_routes(rg, source, out.weights, relaxed)) {
      out.table.set(std::move(r));
      ++out.stats.total_pairs;
    }
    ++out.stats.sources;
  }
  return out;
}

inline GenerationResult build_rt_bfs(const RoutingGraph& rg) {
  const auto nodes = rg.topology().live_nodes();
  return build_rt_bfs(rg, nodes);
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ALGORITHMS_BFS_HPP
