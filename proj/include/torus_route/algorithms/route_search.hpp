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

#ifndef TORUS_ROUTE_ALGORITHMS_ROUTE_SEARCH_HPP
#define TORUS_ROUTE_ALGORITHMS_ROUTE_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "torus_route/routes.hpp"
#include "torus_route/routing_graph.hpp"

namespace torus_route {

class UnroutableError : public std::runtime_error {
 public:
  UnroutableError(const Topology& t, std::vector<std::pair<NodeId, NodeId>> pairs)
      : std::runtime_error(describe(t, pairs)), pairs_(std::move(pairs)) {}
  const std::vector<std::pair<NodeId, NodeId>>& pairs() const { return pairs_; }

 private:
  static std::string describe(const Topology& t, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::string s = "no legal route for " + std::to_string(pairs.size()) + " pair(s):";
    for (std::size_t i = 0; i < pairs.size() && i < 16; ++i) {
      s += ' ' + t.format(pairs[i].first) + "->" + t.format(pairs[i].second);
    }
    return s;
  }
  std::vector<std::pair<NodeId, NodeId>> pairs_;
};

/// Minimal legal route length, number of distinct minimal physical routes
/// (direction sequences, saturating), and the fewest turns among them.
struct PairSummary {
  int length = kUnreachable;
  std::uint64_t routes = 0;
  int min_turns = std::numeric_limits<int>::max();
};

namespace detail {

inline constexpr std::uint64_t kCountCeiling = std::uint64_t{1} << 62;

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return std::min(kCountCeiling, a + b);
}

struct VertexSetHash {
  std::size_t operator()(const std::vector<VertexId>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (VertexId x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

inline bool reaches_end(const RoutingGraph& rg, VertexId v) {
  for (const RGEdge& e : rg.out_edges(v)) {
    if (e.link == kNoLink && rg.is_end(e.to)) return true;
  }
  return false;
}

// Vertices reachable from `set` by one step over `link`, sorted.
inline void step_set(const RoutingGraph& rg, const std::vector<VertexId>& set, ChannelId link,
                     std::vector<VertexId>& out) {
  out.clear();
  for (VertexId v : set) {
    for (const RGEdge& e : rg.out_edges(v)) {
      if (e.link == link) out.push_back(e.to);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

// Longest route worth searching: runs longer than d_j can be shortened.
inline int route_length_bound(const Topology& t) {
  int bound = 2;
  for (int d : t.dims()) bound += d;
  return bound;
}

}  // namespace detail

/// Summaries for every destination slot from `src`.
///
/// Several RG paths can spell the same direction sequence (a first step
/// also reads as a body step). Counting runs over sets of RG vertices
/// reached by a sequence, so each sequence is counted once.
inline std::vector<PairSummary> summarize_routes_from(const RoutingGraph& rg, NodeId src) {
  const Topology& t = rg.topology();
  const int dirs = t.direction_count();
  std::vector<PairSummary> out(t.node_slots());
  if (!t.is_live(src)) return out;
  out[src].length = 0;
  out[src].routes = 1;
  out[src].min_turns = 0;

  struct State {
    std::uint64_t count;
    int min_turns;
  };
  using Level = std::unordered_map<std::vector<VertexId>, State, detail::VertexSetHash>;
  Level current;
  current.emplace(std::vector<VertexId>{rg.begin(src)}, State{1, 0});
  std::size_t found = 1;
  const int bound = detail::route_length_bound(t);
  std::vector<VertexId> next_set;
  for (int level = 1; level <= bound && !current.empty() && found < t.node_count(); ++level) {
    Level next;
    for (const auto& [set, state] : current) {
      const NodeId u = rg.node_of(set.front());
      const auto last = rg.incoming(set.front());
      for (int d = 0; d < dirs; ++d) {
        const Direction dir(d, t.dimensions());
        const ChannelId link = t.channel_id(u, dir);
        if (!t.channel_live(link)) continue;
        detail::step_set(rg, set, link, next_set);
        if (next_set.empty()) continue;
        const int turns = state.min_turns + (last && *last != dir ? 1 : 0);
        auto [it, fresh] = next.try_emplace(next_set, State{state.count, turns});
        if (!fresh) {
          it->second.count = detail::saturating_add(it->second.count, state.count);
          it->second.min_turns = std::min(it->second.min_turns, turns);
        }
      }
    }
    for (const auto& [set, state] : next) {
      const NodeId w = rg.node_of(set.front());
      PairSummary& s = out[w];
      if (s.length < level) continue;
      if (!std::ranges::any_of(set, [&](VertexId v) { return detail::reaches_end(rg, v); })) continue;
      if (s.length == kUnreachable) {
        s.length = level;
        ++found;
      }
      s.routes = detail::saturating_add(s.routes, state.count);
      s.min_turns = std::min(s.min_turns, state.min_turns);
    }
    current = std::move(next);
  }
  return out;
}

/// Hop counts to End(dst) over reversed RG edges (End itself is 0).
inline std::vector<int> distances_to_end(const RoutingGraph& rg, NodeId dst) {
  // Reverse adjacency built on the fly; callers batching many
  // destinations should use ReverseRoutingGraph.
  std::vector<std::vector<VertexId>> rev(rg.vertex_count());
  for (VertexId v = 0; v < rg.vertex_count(); ++v) {
    for (const RGEdge& e : rg.out_edges(v)) rev[e.to].push_back(v);
  }
  std::vector<int> dist(rg.vertex_count(), kUnreachable);
  std::deque<VertexId> queue{rg.end(dst)};
  dist[rg.end(dst)] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId p : rev[v]) {
      if (dist[p] == kUnreachable) {
        dist[p] = dist[v] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

/// Reversed RG adjacency in CSR form, for repeated backward searches.
class ReverseRoutingGraph {
 public:
  explicit ReverseRoutingGraph(const RoutingGraph& rg) : rg_(&rg) {
    offsets_.assign(rg.vertex_count() + 1, 0);
    for (VertexId v = 0; v < rg.vertex_count(); ++v) {
      for (const RGEdge& e : rg.out_edges(v)) ++offsets_[e.to + 1];
    }
    for (std::size_t i = 0; i < rg.vertex_count(); ++i) offsets_[i + 1] += offsets_[i];
    sources_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (VertexId v = 0; v < rg.vertex_count(); ++v) {
      for (const RGEdge& e : rg.out_edges(v)) sources_[fill[e.to]++] = v;
    }
  }

  std::vector<int> distances_to_end(NodeId dst) const {
    std::vector<int> dist(rg_->vertex_count(), kUnreachable);
    std::deque<VertexId> queue{rg_->end(dst)};
    dist[rg_->end(dst)] = 0;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i) {
        const VertexId p = sources_[i];
        if (dist[p] == kUnreachable) {
          dist[p] = dist[v] + 1;
          queue.push_back(p);
        }
      }
    }
    return dist;
  }

 private:
  const RoutingGraph* rg_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> sources_;
};

struct RouteVariants {
  std::vector<Route> routes;
  bool truncated = false;
};

/// Distinct minimal routes src -> dst in lexicographic direction order,
/// each in canonical form, at most `cap` of them. `to_end` must be
/// distances_to_end(rg, dst).
inline RouteVariants enumerate_minimal_routes(const RoutingGraph& rg, NodeId src, NodeId dst,
                                              std::size_t cap, const std::vector<int>& to_end) {
  const Topology& t = rg.topology();
  const int total = to_end[rg.begin(src)];
  if (total == kUnreachable || src == dst) {
    throw UnroutableError(t, {{src, dst}});
  }
  const int length = total - 1;  // the final hop into End carries no link
  const TurnSet relaxed(rg.augmentation());
  RouteVariants out;
  std::vector<Direction> steps;

  struct Frame {
    std::vector<VertexId> set;
    int next_dir;
  };
  std::vector<Frame> stack;
  stack.push_back({{rg.begin(src)}, 0});
  std::vector<VertexId> next_set;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const int depth = static_cast<int>(stack.size()) - 1;
    if (f.next_dir >= t.direction_count()) {
      stack.pop_back();
      if (!steps.empty()) steps.pop_back();
      continue;
    }
    const Direction dir(f.next_dir++, t.dimensions());
    const NodeId u = rg.node_of(f.set.front());
    const ChannelId link = t.channel_id(u, dir);
    if (!t.channel_live(link)) continue;
    detail::step_set(rg, f.set, link, next_set);
    // Keep vertices that can still finish on time.
    const int remaining = length - (depth + 1);
    std::erase_if(next_set, [&](VertexId v) { return to_end[v] != remaining + 1; });
    if (next_set.empty()) continue;
    if (remaining == 0) {
      steps.push_back(dir);
      auto route = canonical_route(t, src, steps, relaxed);
      steps.pop_back();
      if (!route) {
        throw std::logic_error("routing graph path has no legal parse");
      }
      if (out.routes.size() == cap) {
        out.truncated = true;
        return out;
      }
      out.routes.push_back(std::move(*route));
      continue;
    }
    steps.push_back(dir);
    stack.push_back({next_set, 0});
  }
  return out;
}

inline RouteVariants enumerate_minimal_routes(const RoutingGraph& rg, NodeId src, NodeId dst,
                                              std::size_t cap) {
  return enumerate_minimal_routes(rg, src, dst, cap, distances_to_end(rg, dst));
}

/// Route from a parent array; parent[begin] must be kNoParent.
inline constexpr VertexId kNoParent = ~VertexId{0};

inline std::vector<VertexId> path_from_parents(const std::vector<VertexId>& parent, VertexId target) {
  std::vector<VertexId> path;
  for (VertexId v = target; v != kNoParent; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Decodes an RG path and rewrites it in canonical form.
inline Route route_from_path(const RoutingGraph& rg, const std::vector<VertexId>& path,
                             const TurnSet& relaxed) {
  const Route decoded = decode_rg_path(rg, path);
  auto canonical = canonical_route(rg.topology(), decoded, relaxed);
  if (!canonical) throw std::logic_error("routing graph path has no legal parse");
  return *canonical;
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ALGORITHMS_ROUTE_SEARCH_HPP
