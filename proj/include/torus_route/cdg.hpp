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

#ifndef TORUS_ROUTE_CDG_HPP
#define TORUS_ROUTE_CDG_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "torus_route/topology.hpp"

namespace torus_route {

/// Bit set over the 2n directions of a topology (n <= 4).
class DirectionSet {
 public:
  constexpr DirectionSet() = default;
  constexpr explicit DirectionSet(std::uint8_t bits) : bits_(bits) {}
  static constexpr DirectionSet of(Direction d) {
    return DirectionSet(static_cast<std::uint8_t>(1u << d.index()));
  }

  constexpr bool contains(Direction d) const { return (bits_ >> d.index()) & 1u; }
  constexpr bool contains_all(DirectionSet other) const {
    return (bits_ & other.bits_) == other.bits_;
  }
  constexpr void insert(Direction d) { bits_ |= static_cast<std::uint8_t>(1u << d.index()); }
  constexpr DirectionSet& operator|=(DirectionSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr int size() const { return __builtin_popcount(bits_); }

  friend constexpr bool operator==(DirectionSet, DirectionSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct CdgEdge {
  ChannelId to = 0;
  bool ring = false;       // same direction on both channels
  bool augmented = false;  // order-violating turn added by augment_cdg
};

/// Channel dependency graph over the live channels of a topology.
class ChannelDependencyGraph {
 public:
  /// Vertices only, no dependencies.
  static ChannelDependencyGraph empty(const Topology& t) {
    ChannelDependencyGraph g;
    g.topology_ = t;
    g.out_.assign(t.channel_slots(), {});
    g.in_.assign(t.channel_slots(), {});
    return g;
  }

  const Topology& topology() const { return topology_; }
  const std::vector<CdgEdge>& successors(ChannelId c) const { return out_[c]; }
  const std::vector<ChannelId>& predecessors(ChannelId c) const { return in_[c]; }

  bool has_edge(ChannelId from, ChannelId to) const {
    return std::ranges::any_of(out_[from], [&](const CdgEdge& e) { return e.to == to; });
  }

  /// Adds from -> to unless present. Both channels must be live and
  /// adjacent (head of `from` is tail of `to`).
  bool add_edge(ChannelId from, ChannelId to, bool augmented = false) {
    if (!topology_.channel_live(from) || !topology_.channel_live(to) ||
        topology_.channel_head(from) != topology_.channel_tail(to)) {
      throw std::invalid_argument("dependency " + topology_.format_channel(from) + " -> " +
                                  topology_.format_channel(to) + " does not chain two live channels");
    }
    if (has_edge(from, to)) return false;
    const bool ring = topology_.channel_direction(from) == topology_.channel_direction(to);
    out_[from].push_back({to, ring, augmented});
    in_[to].push_back(from);
    ++edge_count_;
    return true;
  }

  std::size_t edge_count() const { return edge_count_; }

  std::vector<ChannelDependency> edges() const {
    std::vector<ChannelDependency> all;
    for (ChannelId c = 0; c < out_.size(); ++c) {
      for (const CdgEdge& e : out_[c]) all.push_back({c, e.to});
    }
    return all;
  }

 private:
  Topology topology_;
  std::vector<std::vector<CdgEdge>> out_;
  std::vector<std::vector<ChannelId>> in_;
  std::size_t edge_count_ = 0;
};

/// Dependencies permitted by direction order routing: D_i <= D_j on
/// consecutive channels, never reversing into the opposite direction.
inline ChannelDependencyGraph build_cdg(const Topology& t) {
  auto g = ChannelDependencyGraph::empty(t);
  for (ChannelId c : t.live_channels()) {
    const Direction di = t.channel_direction(c);
    const NodeId head = t.channel_head(c);
    for (Direction dj : t.directions()) {
      if (dj < di || dj == di.opposite()) continue;
      const ChannelId next = t.channel_id(head, dj);
      if (t.channel_live(next)) g.add_edge(c, next);
    }
  }
  return g;
}

namespace detail {

// Iterative Tarjan. Returns component index per channel slot (-1 for dead
// channels); components are numbered in reverse topological order.
inline std::vector<int> strongly_connected_components(const ChannelDependencyGraph& g,
                                                      int* component_count) {
  const std::size_t slots = g.topology().channel_slots();
  std::vector<int> index(slots, -1), low(slots, 0), comp(slots, -1);
  std::vector<std::uint8_t> on_stack(slots, 0);
  std::vector<ChannelId> stack;
  std::vector<std::pair<ChannelId, std::size_t>> frames;
  int next_index = 0;
  int components = 0;
  for (ChannelId root : g.topology().live_channels()) {
    if (index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& succ = g.successors(v);
      if (pos < succ.size()) {
        const ChannelId w = succ[pos++].to;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        ChannelId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const ChannelId finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const ChannelId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  if (component_count) *component_count = components;
  return comp;
}

}  // namespace detail

/// B(c): the direction of c plus every direction on a channel reachable
/// from c. Indexed by channel id; dead channels hold the empty set.
///
/// Computed over the condensation in reverse topological order, which gives
/// the same sets as one breadth-first search per channel.
inline std::vector<DirectionSet> used_direction_sets(const ChannelDependencyGraph& g) {
  const Topology& t = g.topology();
  int count = 0;
  const std::vector<int> comp = detail::strongly_connected_components(g, &count);
  std::vector<DirectionSet> per_component(count);
  std::vector<std::vector<ChannelId>> members(count);
  for (ChannelId c : t.live_channels()) members[comp[c]].push_back(c);
  // Tarjan numbers sinks first, so successors' components are complete.
  for (int k = 0; k < count; ++k) {
    DirectionSet acc;
    for (ChannelId c : members[k]) {
      acc.insert(t.channel_direction(c));
      for (const CdgEdge& e : g.successors(c)) {
        if (comp[e.to] != k) acc |= per_component[comp[e.to]];
      }
    }
    per_component[k] = acc;
  }
  std::vector<DirectionSet> out(t.channel_slots());
  for (ChannelId c : t.live_channels()) out[c] = per_component[comp[c]];
  return out;
}

/// A turn [(u_j, D_j), (u_k, D_k)] with D_j > D_k is realizable by the
/// router only as a positive first step (both directions positive) or a
/// negative last step (both negative).
inline bool is_relaxable_turn(Direction first, Direction second) {
  if (!(first > second)) return false;
  return (first.is_positive() && second.is_positive()) ||
         (first.is_negative() && second.is_negative());
}

struct AugmentResult {
  ChannelDependencyGraph graph;
  std::vector<ChannelDependency> added;
  std::vector<DirectionSet> used;
  int passes = 0;
};

/// Adds every relaxable turn whose tail direction is not in the used
/// direction set of its head channel, propagating the head's set backwards
/// after each addition. Candidates are scanned by (tail node, tail
/// direction, head direction); scans repeat until one adds nothing.
inline AugmentResult augment_cdg(ChannelDependencyGraph g) {
  const Topology& t = g.topology();
  std::vector<DirectionSet> used = used_direction_sets(g);
  std::vector<ChannelDependency> added;
  int passes = 0;
  std::deque<ChannelId> queue;
  for (bool progress = true; progress;) {
    progress = false;
    ++passes;
    for (NodeId u : t.live_nodes()) {
      for (Direction dj : t.directions()) {
        const ChannelId tail = t.channel_id(u, dj);
        if (!t.channel_live(tail)) continue;
        const NodeId v = t.channel_head(tail);
        for (Direction dk : t.directions()) {
          if (!is_relaxable_turn(dj, dk)) continue;
          const ChannelId head = t.channel_id(v, dk);
          if (!t.channel_live(head) || used[head].contains(dj)) continue;
          if (!g.add_edge(tail, head, /*augmented=*/true)) continue;
          added.push_back({tail, head});
          progress = true;
          const DirectionSet gained = used[head];
          queue.assign({tail});
          while (!queue.empty()) {
            const ChannelId c = queue.front();
            queue.pop_front();
            if (used[c].contains_all(gained)) continue;
            used[c] |= gained;
            for (ChannelId p : g.predecessors(c)) queue.push_back(p);
          }
        }
      }
    }
  }
  return {std::move(g), std::move(added), std::move(used), passes};
}

/// Outcome of the deadlock check. On success `order` lists every live
/// channel so that all non-ring dependencies point forward; on failure
/// `cycle` is a closed channel walk c0 -> c1 -> ... -> c0 (c0 not repeated)
/// containing at least one direction-changing dependency.
struct DeadlockCheck {
  bool deadlock_free = false;
  std::vector<ChannelId> order;
  std::vector<ChannelId> cycle;
};

/// Certifies that no dependency cycle contains a direction change.
///
/// Same-direction (ring) dependencies may form cycles among themselves;
/// those are covered by bubble flow control. Ring members are contracted
/// rather than deleted, so a cycle mixing ring hops and turns is still
/// reported.
inline DeadlockCheck assert_deadlock_free(const ChannelDependencyGraph& g) {
  const Topology& t = g.topology();
  int count = 0;
  const std::vector<int> comp = detail::strongly_connected_components(g, &count);
  DeadlockCheck result;
  for (ChannelId c : t.live_channels()) {
    for (const CdgEdge& e : g.successors(c)) {
      if (e.ring || comp[e.to] != comp[c]) continue;
      // Witness: the turn c -> e.to, then a path back inside the component.
      std::vector<ChannelId> parent(t.channel_slots(), ~ChannelId{0});
      std::deque<ChannelId> queue{e.to};
      parent[e.to] = e.to;
      while (!queue.empty() && parent[c] == ~ChannelId{0}) {
        const ChannelId x = queue.front();
        queue.pop_front();
        for (const CdgEdge& f : g.successors(x)) {
          if (comp[f.to] == comp[c] && parent[f.to] == ~ChannelId{0}) {
            parent[f.to] = x;
            queue.push_back(f.to);
          }
        }
      }
      std::vector<ChannelId> back;
      for (ChannelId x = c; x != e.to; x = parent[x]) back.push_back(x);
      back.push_back(e.to);
      std::reverse(back.begin(), back.end());  // e.to ... c
      result.cycle.push_back(c);
      result.cycle.insert(result.cycle.end(), back.begin(), back.end() - 1);
      return result;
    }
  }
  result.deadlock_free = true;
  std::vector<std::pair<int, ChannelId>> keyed;
  for (ChannelId c : t.live_channels()) keyed.push_back({-comp[c], c});
  std::sort(keyed.begin(), keyed.end());
  for (const auto& [key, c] : keyed) result.order.push_back(c);
  return result;
}

inline std::string format_channels(const Topology& t, const std::vector<ChannelId>& channels) {
  std::string out;
  for (ChannelId c : channels) {
    if (!out.empty()) out += " -> ";
    out += t.format_channel(c);
  }
  return out;
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_CDG_HPP
