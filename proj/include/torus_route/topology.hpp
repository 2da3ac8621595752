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

#ifndef TORUS_ROUTE_TOPOLOGY_HPP
#define TORUS_ROUTE_TOPOLOGY_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace torus_route {

using NodeId = std::uint32_t;
using ChannelId = std::uint32_t;
using Coord = std::vector<int>;

inline constexpr int kMaxDimensions = 4;
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One of the 2n torus directions, totally ordered as +X+Y+Z+K-X-Y-Z-K.
///
/// The index is zero based: positive directions occupy [0, n), negative
/// directions [n, 2n). A direction only makes sense together with the
/// dimension count it was created for.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr Direction(int index, int dimensions)
      : index_(static_cast<std::uint8_t>(index)),
        dimensions_(static_cast<std::uint8_t>(dimensions)) {}

  static constexpr Direction positive(int dim, int dimensions) {
    return {dim, dimensions};
  }
  static constexpr Direction negative(int dim, int dimensions) {
    return {dim + dimensions, dimensions};
  }

  constexpr int index() const { return index_; }
  constexpr int dimensions() const { return dimensions_; }
  constexpr int dimension() const { return index_ % dimensions_; }
  constexpr bool is_positive() const { return index_ < dimensions_; }
  constexpr bool is_negative() const { return !is_positive(); }
  constexpr int sign() const { return is_positive() ? 1 : -1; }
  constexpr Direction opposite() const {
    return {(index_ + dimensions_) % (2 * dimensions_), dimensions_};
  }

  std::string name() const {
    static constexpr char kAxes[] = {'X', 'Y', 'Z', 'K'};
    return std::string(1, is_positive() ? '+' : '-') + kAxes[dimension()];
  }

  friend constexpr bool operator==(Direction a, Direction b) {
    return a.index_ == b.index_;
  }
  friend constexpr auto operator<=>(Direction a, Direction b) {
    return a.index_ <=> b.index_;
  }

 private:
  std::uint8_t index_ = 0;
  std::uint8_t dimensions_ = 1;
};

/// Parses "+X", "-Y", or the same with U+2212 as the minus sign.
inline Direction parse_direction(std::string_view text, int dimensions) {
  std::string_view rest;
  bool positive = true;
  if (text.starts_with("+")) {
    rest = text.substr(1);
  } else if (text.starts_with("-")) {
    positive = false;
    rest = text.substr(1);
  } else if (text.starts_with("\xE2\x88\x92")) {
    positive = false;
    rest = text.substr(3);
  } else {
    throw TopologyError("direction must start with a sign: " + std::string(text));
  }
  static constexpr std::string_view kAxes = "XYZK";
  if (rest.size() != 1 || kAxes.find(rest[0]) == std::string_view::npos) {
    throw TopologyError("unknown direction axis: " + std::string(text));
  }
  const int dim = static_cast<int>(kAxes.find(rest[0]));
  if (dim >= dimensions) {
    throw TopologyError("direction " + std::string(text) + " exceeds " +
                        std::to_string(dimensions) + " dimensions");
  }
  return positive ? Direction::positive(dim, dimensions)
                  : Direction::negative(dim, dimensions);
}

/// A consecutive-channel hold: a packet occupying `from` requests `to`.
struct ChannelDependency {
  ChannelId from = 0;
  ChannelId to = 0;
  friend auto operator<=>(const ChannelDependency&, const ChannelDependency&) = default;
};

/// An n-dimensional torus (n <= 4) with failed nodes and links removed.
///
/// Dimensions of size 2 degenerate to a mesh: node 0 reaches node 1 through
/// +dir only, node 1 reaches node 0 through -dir only. Node ids are the
/// row-major encoding of coordinates (first coordinate most significant).
/// Channel ids are `node * 2n + direction index` over all node slots; dead
/// channels keep their id but report `channel_live() == false`.
class Topology {
 public:
  static Topology make_torus(std::vector<int> dims,
                             const std::vector<Coord>& failed_nodes = {},
                             const std::vector<std::pair<Coord, Direction>>& failed_links = {}) {
    if (dims.empty() || static_cast<int>(dims.size()) > kMaxDimensions) {
      throw TopologyError("dimension count must be in 1..4, got " +
                          std::to_string(dims.size()));
    }
    for (int d : dims) {
      if (d < 2) throw TopologyError("every dimension size must be >= 2");
    }
    Topology t;
    t.dims_ = std::move(dims);
    const int n = t.dimensions();
    t.strides_.assign(n, 1);
    for (int j = n - 2; j >= 0; --j) t.strides_[j] = t.strides_[j + 1] * t.dims_[j + 1];
    t.slots_ = static_cast<std::size_t>(t.strides_[0]) * t.dims_[0];
    t.live_.assign(t.slots_, 1);

    for (const Coord& c : failed_nodes) {
      t.check_coord(c);
      t.live_[t.id(c)] = 0;
      t.failed_nodes_.insert(t.id(c));
    }

    t.neighbors_.assign(t.slots_ * 2 * n, -1);
    for (NodeId u = 0; u < t.slots_; ++u) {
      for (int dir = 0; dir < 2 * n; ++dir) {
        const int target = t.raw_neighbor(u, Direction(dir, n));
        if (target >= 0 && t.live_[u] && t.live_[target]) {
          t.neighbors_[u * 2 * n + dir] = target;
        }
      }
    }

    for (const auto& [c, d] : failed_links) {
      t.check_coord(c);
      if (d.dimensions() != n) throw TopologyError("failed link direction has wrong arity");
      const NodeId u = t.id(c);
      const int v = t.raw_neighbor(u, d);
      if (v < 0) {
        throw TopologyError("failed link " + d.name() + " does not exist at node " +
                            std::to_string(u));
      }
      t.neighbors_[u * 2 * n + d.index()] = -1;
      t.neighbors_[static_cast<std::size_t>(v) * 2 * n + d.opposite().index()] = -1;
      t.failed_links_.insert({u, d.index()});
      t.failed_links_.insert({static_cast<NodeId>(v), d.opposite().index()});
    }

    t.live_nodes_.clear();
    for (NodeId u = 0; u < t.slots_; ++u) {
      if (t.live_[u]) t.live_nodes_.push_back(u);
    }
    t.live_channels_ = 0;
    for (int v : t.neighbors_) t.live_channels_ += v >= 0 ? 1 : 0;
    return t;
  }

  int dimensions() const { return static_cast<int>(dims_.size()); }
  int direction_count() const { return 2 * dimensions(); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t node_slots() const { return slots_; }
  std::size_t channel_slots() const { return slots_ * direction_count(); }
  std::size_t node_count() const { return live_nodes_.size(); }
  std::size_t channel_count() const { return live_channels_; }
  const std::vector<NodeId>& live_nodes() const { return live_nodes_; }
  bool is_live(NodeId u) const { return u < slots_ && live_[u] != 0; }
  bool has_faults() const { return !failed_nodes_.empty() || !failed_links_.empty(); }

  Direction direction(int index) const { return {index, dimensions()}; }
  std::vector<Direction> directions() const {
    std::vector<Direction> out;
    for (int i = 0; i < direction_count(); ++i) out.push_back(direction(i));
    return out;
  }

  NodeId id(const Coord& c) const {
    NodeId out = 0;
    for (int j = 0; j < dimensions(); ++j) out += static_cast<NodeId>(c[j] * strides_[j]);
    return out;
  }
  Coord coords(NodeId u) const {
    Coord c(dimensions());
    for (int j = 0; j < dimensions(); ++j) c[j] = static_cast<int>(u / strides_[j]) % dims_[j];
    return c;
  }
  std::string format(NodeId u) const {
    std::string s = "(";
    const Coord c = coords(u);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(c[j]);
    }
    return s + ")";
  }

  /// Neighbor across a live link, or -1.
  int neighbor_or_none(NodeId u, Direction d) const {
    return neighbors_[static_cast<std::size_t>(u) * direction_count() + d.index()];
  }
  std::optional<NodeId> neighbor(NodeId u, Direction d) const {
    const int v = neighbor_or_none(u, d);
    if (v < 0) return std::nullopt;
    return static_cast<NodeId>(v);
  }

  ChannelId channel_id(NodeId u, Direction d) const {
    return static_cast<ChannelId>(u * direction_count() + d.index());
  }
  NodeId channel_tail(ChannelId c) const { return c / direction_count(); }
  Direction channel_direction(ChannelId c) const {
    return direction(static_cast<int>(c % direction_count()));
  }
  NodeId channel_head(ChannelId c) const {
    return static_cast<NodeId>(neighbors_[c]);
  }
  bool channel_live(ChannelId c) const { return c < neighbors_.size() && neighbors_[c] >= 0; }
  std::vector<ChannelId> live_channels() const {
    std::vector<ChannelId> out;
    for (ChannelId c = 0; c < neighbors_.size(); ++c) {
      if (neighbors_[c] >= 0) out.push_back(c);
    }
    return out;
  }
  std::string format_channel(ChannelId c) const {
    return format(channel_tail(c)) + " " + channel_direction(c).name();
  }

  /// Hop distances from `from` over live links; kUnreachable where cut off.
  std::vector<int> distances_from(NodeId from) const {
    std::vector<int> dist(slots_, kUnreachable);
    if (!is_live(from)) return dist;
    std::deque<NodeId> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (int dir = 0; dir < direction_count(); ++dir) {
        const int v = neighbors_[u * direction_count() + dir];
        if (v >= 0 && dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          queue.push_back(static_cast<NodeId>(v));
        }
      }
    }
    return dist;
  }

  /// Minimal hop count; closed form without faults, breadth-first otherwise.
  int distance(NodeId a, NodeId b) const {
    if (!has_faults()) {
      const Coord ca = coords(a);
      const Coord cb = coords(b);
      int total = 0;
      for (int j = 0; j < dimensions(); ++j) {
        const int delta = std::abs(ca[j] - cb[j]);
        total += std::min(delta, dims_[j] - delta);
      }
      return total;
    }
    return distances_from(a)[b];
  }

  /// Candidate farthest from `from`; ties go to the smallest id.
  NodeId most_remote(std::span<const NodeId> candidates, NodeId from) const {
    if (candidates.empty()) throw std::invalid_argument("most_remote: empty candidate set");
    const std::vector<int> dist = has_faults() ? distances_from(from) : std::vector<int>{};
    auto d = [&](NodeId v) { return dist.empty() ? distance(from, v) : dist[v]; };
    NodeId best = candidates.front();
    int best_distance = d(best);
    for (NodeId v : candidates) {
      const int dv = d(v);
      if (dv > best_distance || (dv == best_distance && v < best)) {
        best = v;
        best_distance = dv;
      }
    }
    return best;
  }

  const std::set<NodeId>& failed_nodes() const { return failed_nodes_; }
  /// Failed links as (tail node, direction index), closed under reversal.
  const std::set<std::pair<NodeId, int>>& failed_links() const { return failed_links_; }

 private:
  void check_coord(const Coord& c) const {
    if (static_cast<int>(c.size()) != dimensions()) {
      throw TopologyError("coordinate arity does not match dimension count");
    }
    for (int j = 0; j < dimensions(); ++j) {
      if (c[j] < 0 || c[j] >= dims_[j]) throw TopologyError("coordinate out of range");
    }
  }

  // Structural neighbor ignoring faults; -1 for a suppressed mesh wraparound.
  int raw_neighbor(NodeId u, Direction d) const {
    const int j = d.dimension();
    const int size = dims_[j];
    const int x = static_cast<int>(u / strides_[j]) % size;
    int y = x + d.sign();
    if (size == 2) {
      if (y < 0 || y >= size) return -1;
    } else {
      y = (y + size) % size;
    }
    return static_cast<int>(u) + (y - x) * strides_[j];
  }

  std::vector<int> dims_;
  std::vector<int> strides_;
  std::size_t slots_ = 0;
  std::vector<std::uint8_t> live_;
  std::vector<NodeId> live_nodes_;
  std::vector<int> neighbors_;
  std::size_t live_channels_ = 0;
  std::set<NodeId> failed_nodes_;
  std::set<std::pair<NodeId, int>> failed_links_;
};

}  // namespace torus_route

#endif  // TORUS_ROUTE_TOPOLOGY_HPP
