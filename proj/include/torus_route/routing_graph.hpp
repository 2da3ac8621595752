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

#ifndef TORUS_ROUTE_ROUTING_GRAPH_HPP
#define TORUS_ROUTE_ROUTING_GRAPH_HPP

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "torus_route/topology.hpp"

namespace torus_route {

using VertexId = std::uint32_t;
inline constexpr ChannelId kNoLink = ~ChannelId{0};

enum class VertexKind : std::uint8_t { Begin, FirstStep, Dirbit, LastStep, End };

/// Per-dimension signs of the directions a route body has used: 0 unused,
/// +1 positive, -1 negative. Encoded base 3 (digit 1 = +, 2 = -); code 0,
/// the empty vector, is not a vertex.
class DirbitVector {
 public:
  DirbitVector() = default;
  DirbitVector(int code, int dimensions) : code_(code), dimensions_(dimensions) {}

  static DirbitVector single(Direction d) {
    int code = (d.is_positive() ? 1 : 2);
    for (int j = 0; j < d.dimension(); ++j) code *= 3;
    return {code, d.dimensions()};
  }

  int code() const { return code_; }
  int dimensions() const { return dimensions_; }

  int entry(int dim) const {
    int c = code_;
    for (int j = 0; j < dim; ++j) c /= 3;
    const int digit = c % 3;
    return digit == 0 ? 0 : (digit == 1 ? 1 : -1);
  }

  /// Direction-bit rule: d must not reverse a dimension already used.
  bool admits(Direction d) const {
    const int e = entry(d.dimension());
    return e == 0 || e == d.sign();
  }

  DirbitVector with(Direction d) const {
    if (entry(d.dimension()) != 0) return *this;
    return {code_ + DirbitVector::single(d).code_, dimensions_};
  }

  /// Greatest direction with a nonzero entry.
  Direction last_direction() const {
    int best = -1;
    for (int j = 0; j < dimensions_; ++j) {
      const int e = entry(j);
      if (e == 0) continue;
      const int index = e > 0 ? j : j + dimensions_;
      best = std::max(best, index);
    }
    return {best, dimensions_};
  }

  std::string format() const {
    std::string s;
    for (int j = 0; j < dimensions_; ++j) {
      if (entry(j) == 0) continue;
      if (!s.empty()) s += ',';
      s += Direction(entry(j) > 0 ? j : j + dimensions_, dimensions_).name();
    }
    return s;
  }

  friend bool operator==(const DirbitVector&, const DirbitVector&) = default;

 private:
  int code_ = 0;
  int dimensions_ = 1;
};

struct RGVertex {
  NodeId node = 0;
  VertexKind kind = VertexKind::Begin;
  Direction dir;        // FirstStep / LastStep only
  DirbitVector dirbit;  // Dirbit only

  /// Direction of the step that entered this vertex, if any.
  std::optional<Direction> incoming() const {
    switch (kind) {
      case VertexKind::FirstStep:
      case VertexKind::LastStep:
        return dir;
      case VertexKind::Dirbit:
        return dirbit.last_direction();
      default:
        return std::nullopt;
    }
  }

  friend bool operator==(const RGVertex&, const RGVertex&) = default;
};

struct RGEdge {
  VertexId to = 0;
  ChannelId link = kNoLink;
  bool augmented = false;
};

/// Edge families of the routing graph, switchable for mutation testing of
/// the verification oracle. Production code always builds with all on.
struct RuleFamilies {
  bool begin_first_step = true;
  bool begin_dirbit = true;
  bool first_step_dirbit = true;
  bool dirbit_dirbit = true;
  bool dirbit_last_step = true;
  bool to_end = true;
};

/// Expanded graph whose Begin -> End paths are exactly the legal routes.
///
/// Per node there are 3^n + 2n + 1 vertices, laid out as Begin, FS(+dir)
/// for each positive direction, Dirbit(code) for codes 1 .. 3^n - 1,
/// LS(-dir) for each negative direction, End. Vertex ids are
/// `node * vertices_per_node + local`; dead nodes keep isolated slots.
class RoutingGraph {
 public:
  const Topology& topology() const { return topology_; }
  int dimensions() const { return topology_.dimensions(); }
  int vertices_per_node() const { return per_node_; }
  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  static int vertices_per_node(int n) {
    int pow3 = 1;
    for (int j = 0; j < n; ++j) pow3 *= 3;
    return pow3 + 2 * n + 1;
  }
  /// Upper bound 2n*3^n + 1.5n^2 + 1.5n + 1, computed in integers.
  static long edge_bound_per_node(int n) {
    long pow3 = 1;
    for (int j = 0; j < n; ++j) pow3 *= 3;
    return 2L * n * pow3 + (3L * n * n + 3L * n) / 2 + 1;
  }

  VertexId begin(NodeId u) const { return u * per_node_; }
  VertexId end(NodeId u) const { return u * per_node_ + per_node_ - 1; }
  VertexId first_step(NodeId u, Direction d) const { return u * per_node_ + 1 + d.index(); }
  VertexId dirbit(NodeId u, DirbitVector v) const {
    return u * per_node_ + dimensions() + v.code();
  }
  VertexId last_step(NodeId u, Direction d) const {
    return u * per_node_ + dirbit_limit() + dimensions() + (d.index() - dimensions());
  }

  NodeId node_of(VertexId v) const { return v / per_node_; }
  bool is_end(VertexId v) const { return v % per_node_ == static_cast<VertexId>(per_node_ - 1); }
  bool is_begin(VertexId v) const { return v % per_node_ == 0; }

  RGVertex vertex(VertexId v) const {
    const int n = dimensions();
    const int local = static_cast<int>(v % per_node_);
    RGVertex out;
    out.node = node_of(v);
    if (local == 0) {
      out.kind = VertexKind::Begin;
    } else if (local <= n) {
      out.kind = VertexKind::FirstStep;
      out.dir = Direction(local - 1, n);
    } else if (local < n + dirbit_limit()) {
      out.kind = VertexKind::Dirbit;
      out.dirbit = DirbitVector(local - n, n);
    } else if (local < per_node_ - 1) {
      out.kind = VertexKind::LastStep;
      out.dir = Direction(local - n - dirbit_limit() + n, n);
    } else {
      out.kind = VertexKind::End;
    }
    return out;
  }

  VertexId id(const RGVertex& v) const {
    switch (v.kind) {
      case VertexKind::Begin: return begin(v.node);
      case VertexKind::FirstStep: return first_step(v.node, v.dir);
      case VertexKind::Dirbit: return dirbit(v.node, v.dirbit);
      case VertexKind::LastStep: return last_step(v.node, v.dir);
      case VertexKind::End: return end(v.node);
    }
    return 0;
  }

  /// Direction of the step entering v, precomputed per local slot.
  std::optional<Direction> incoming(VertexId v) const {
    const int d = incoming_[v % per_node_];
    if (d < 0) return std::nullopt;
    return Direction(d, dimensions());
  }

  std::span<const RGEdge> out_edges(VertexId v) const {
    return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
  }

  /// Order-violating dependencies realized by augmentation edges.
  const std::vector<ChannelDependency>& augmentation() const { return augmentation_; }

  std::string format_vertex(VertexId v) const {
    const RGVertex x = vertex(v);
    std::string s = topology_.format(x.node) + ' ';
    switch (x.kind) {
      case VertexKind::Begin: return s + "Begin";
      case VertexKind::FirstStep: return s + "FS(" + x.dir.name() + ")";
      case VertexKind::Dirbit: return s + "Dirbit(" + x.dirbit.format() + ")";
      case VertexKind::LastStep: return s + "LS(" + x.dir.name() + ")";
      case VertexKind::End: return s + "End";
    }
    return s;
  }

  /// One line per edge:
  /// `<node> <kind> -> <node> <kind> w=<weight> link=<node dir|none> aug=<0|1>`.
  /// `weights` holds extra weight per channel id (empty means all zero).
  std::string dump(std::span<const std::uint64_t> weights = {}) const {
    std::ostringstream out;
    for (VertexId v = 0; v < vertex_count(); ++v) {
      for (const RGEdge& e : out_edges(v)) {
        const std::uint64_t w =
            (e.link != kNoLink && !weights.empty()) ? weights[e.link] : 0;
        out << format_vertex(v) << " -> " << format_vertex(e.to) << " w=" << w
            << " link=" << (e.link == kNoLink ? "none" : topology_.format_channel(e.link))
            << " aug=" << (e.augmented ? 1 : 0) << '\n';
      }
    }
    return out.str();
  }

 private:
  friend RoutingGraph build_routing_graph(const Topology&, const RuleFamilies&);
  friend RoutingGraph apply_augmentation(RoutingGraph, const std::vector<ChannelDependency>&);

  int dirbit_limit() const { return per_node_ - 2 * dimensions() - 1; }  // 3^n

  struct PendingEdge {
    VertexId from;
    RGEdge edge;
  };

  void assemble(std::vector<PendingEdge> pending, std::size_t vertices) {
    offsets_.assign(vertices + 1, 0);
    for (const auto& p : pending) ++offsets_[p.from + 1];
    for (std::size_t i = 0; i < vertices; ++i) offsets_[i + 1] += offsets_[i];
    edges_.assign(pending.size(), {});
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& p : pending) edges_[fill[p.from]++] = p.edge;
  }

  std::vector<PendingEdge> pending_edges() const {
    std::vector<PendingEdge> out;
    out.reserve(edges_.size());
    for (VertexId v = 0; v < vertex_count(); ++v) {
      for (const RGEdge& e : out_edges(v)) out.push_back({v, e});
    }
    return out;
  }

  Topology topology_;
  int per_node_ = 0;
  std::vector<int> incoming_;
  std::vector<std::size_t> offsets_;
  std::vector<RGEdge> edges_;
  std::vector<ChannelDependency> augmentation_;
};

/// Connects the per-node vertex sets with the step rules:
///   Begin  -> FS(+D)@u+D, Dirbit({D})@u+D for every D, own End;
///   FS(Dl) -> Dirbit({Dk})@u+Dk for Dl < Dk;
///   Dirbit(l) -> Dirbit(l + Dk)@u+Dk for last(l) <= Dk when l admits Dk,
///               LS(Dk)@u+Dk for negative Dk > last(l) when l admits Dk,
///               own End;
///   LS     -> own End.
/// Steps over dead links are omitted. FS carries no End edge: a lone first
/// step is the same physical route as Begin -> Dirbit({D}) -> End.
inline RoutingGraph build_routing_graph(const Topology& t, const RuleFamilies& rules = {}) {
  RoutingGraph rg;
  rg.topology_ = t;
  const int n = t.dimensions();
  rg.per_node_ = RoutingGraph::vertices_per_node(n);
  const int codes = rg.dirbit_limit();

  rg.incoming_.assign(rg.per_node_, -1);
  for (int local = 1; local < rg.per_node_ - 1; ++local) {
    if (auto d = rg.vertex(static_cast<VertexId>(local)).incoming()) rg.incoming_[local] = d->index();
  }

  std::vector<RoutingGraph::PendingEdge> pending;
  auto link_to = [&](VertexId from, NodeId u, Direction d, auto make_target) {
    const int v = t.neighbor_or_none(u, d);
    if (v < 0) return;
    pending.push_back({from, {make_target(static_cast<NodeId>(v)), t.channel_id(u, d), false}});
  };

  for (NodeId u : t.live_nodes()) {
    const VertexId begin = rg.begin(u);
    if (rules.begin_first_step) {
      for (int k = 0; k < n; ++k) {
        const Direction d(k, n);
        link_to(begin, u, d, [&](NodeId v) { return rg.first_step(v, d); });
      }
    }
    if (rules.begin_dirbit) {
      for (Direction d : t.directions()) {
        link_to(begin, u, d, [&](NodeId v) { return rg.dirbit(v, DirbitVector::single(d)); });
      }
    }
    if (rules.to_end) pending.push_back({begin, {rg.end(u), kNoLink, false}});

    if (rules.first_step_dirbit) {
      for (int l = 0; l < n; ++l) {
        const Direction fs(l, n);
        for (Direction d : t.directions()) {
          if (!(fs < d)) continue;
          link_to(rg.first_step(u, fs), u, d,
                  [&](NodeId v) { return rg.dirbit(v, DirbitVector::single(d)); });
        }
      }
    }

    for (int code = 1; code < codes; ++code) {
      const DirbitVector bits(code, n);
      const Direction last = bits.last_direction();
      const VertexId from = rg.dirbit(u, bits);
      for (Direction d : t.directions()) {
        if (!bits.admits(d)) continue;
        if (rules.dirbit_dirbit && last <= d) {
          link_to(from, u, d, [&](NodeId v) { return rg.dirbit(v, bits.with(d)); });
        }
        if (rules.dirbit_last_step && last < d && d.is_negative()) {
          link_to(from, u, d, [&](NodeId v) { return rg.last_step(v, d); });
        }
      }
      if (rules.to_end) pending.push_back({from, {rg.end(u), kNoLink, false}});
    }

    if (rules.to_end) {
      for (int k = n; k < 2 * n; ++k) {
        pending.push_back({rg.last_step(u, Direction(k, n)), {rg.end(u), kNoLink, false}});
      }
    }
  }
  rg.assemble(std::move(pending), t.node_slots() * rg.per_node_);
  return rg;
}

class AugmentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Realizes order-violating turns [(u_i, D_i), (u_j, D_j)], D_i > D_j,
/// u_j = u_i + D_i:
///   D_i positive: FS(D_i)@u_j -> Dirbit({D_j})@u_j+D_j;
///   D_i, D_j negative: every Dirbit@u_j with last direction D_i that admits
///   D_j -> LS(D_j)@u_j+D_j.
/// Any other shape is rejected.
inline RoutingGraph apply_augmentation(RoutingGraph rg, const std::vector<ChannelDependency>& added) {
  if (added.empty()) return rg;
  const Topology& t = rg.topology_;
  const int n = t.dimensions();
  auto pending = rg.pending_edges();
  std::set<std::pair<VertexId, VertexId>> present;
  for (const auto& p : pending) present.insert({p.from, p.edge.to});
  auto push = [&](VertexId from, VertexId to, ChannelId link) {
    if (present.insert({from, to}).second) pending.push_back({from, {to, link, true}});
  };

  for (const ChannelDependency& dep : added) {
    if (!t.channel_live(dep.from) || !t.channel_live(dep.to) ||
        t.channel_head(dep.from) != t.channel_tail(dep.to)) {
      throw AugmentationError("augmentation turn does not chain two live channels");
    }
    const Direction di = t.channel_direction(dep.from);
    const Direction dj = t.channel_direction(dep.to);
    const NodeId uj = t.channel_tail(dep.to);
    const NodeId uk = t.channel_head(dep.to);
    if (!(di > dj)) {
      throw AugmentationError("turn " + t.format_channel(dep.from) + " -> " +
                              t.format_channel(dep.to) + " does not violate direction order");
    }
    if (di.is_positive() && dj.is_positive()) {
      push(rg.first_step(uj, di), rg.dirbit(uk, DirbitVector::single(dj)), dep.to);
    } else if (di.is_negative() && dj.is_negative()) {
      for (int code = 1; code < rg.dirbit_limit(); ++code) {
        const DirbitVector bits(code, n);
        if (bits.last_direction() == di && bits.admits(dj)) {
          push(rg.dirbit(uj, bits), rg.last_step(uk, dj), dep.to);
        }
      }
    } else {
      throw AugmentationError("turn " + t.format_channel(dep.from) + " -> " +
                              t.format_channel(dep.to) +
                              " is neither a first-step nor a last-step shape");
    }
    rg.augmentation_.push_back(dep);
  }
  rg.assemble(std::move(pending), rg.vertex_count());
  return rg;
}

/// Ordered pairs (src, dst), src != dst, with a Begin(src) -> End(dst) path.
inline std::set<std::pair<NodeId, NodeId>> rg_reachable_pairs(const RoutingGraph& rg) {
  std::set<std::pair<NodeId, NodeId>> out;
  std::vector<std::uint32_t> seen(rg.vertex_count(), 0);
  std::uint32_t stamp = 0;
  std::deque<VertexId> queue;
  for (NodeId src : rg.topology().live_nodes()) {
    ++stamp;
    queue.assign({rg.begin(src)});
    seen[rg.begin(src)] = stamp;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      if (rg.is_end(v) && rg.node_of(v) != src) out.insert({src, rg.node_of(v)});
      for (const RGEdge& e : rg.out_edges(v)) {
        if (seen[e.to] != stamp) {
          seen[e.to] = stamp;
          queue.push_back(e.to);
        }
      }
    }
  }
  return out;
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ROUTING_GRAPH_HPP
