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

#ifndef TORUS_ROUTE_ROUTES_HPP
#define TORUS_ROUTE_ROUTES_HPP

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "torus_route/routing_graph.hpp"
#include "torus_route/topology.hpp"
#include "torus_route/topology_io.hpp"

namespace torus_route {

/// A route written as `src, [FS], body..., [LS]`.
struct Route {
  NodeId src = 0;
  NodeId dst = 0;
  std::optional<Direction> fs;
  std::vector<Direction> body;
  std::optional<Direction> ls;

  std::size_t length() const { return body.size() + (fs ? 1 : 0) + (ls ? 1 : 0); }

  std::vector<Direction> steps() const {
    std::vector<Direction> out;
    if (fs) out.push_back(*fs);
    out.insert(out.end(), body.begin(), body.end());
    if (ls) out.push_back(*ls);
    return out;
  }

  friend bool operator==(const Route&, const Route&) = default;
};

/// Node sequence src, ..., dst; empty if a step crosses a dead link.
inline std::vector<NodeId> node_sequence(const Topology& t, NodeId src,
                                         std::span<const Direction> steps) {
  std::vector<NodeId> nodes{src};
  for (Direction d : steps) {
    const int v = t.neighbor_or_none(nodes.back(), d);
    if (v < 0) return {};
    nodes.push_back(static_cast<NodeId>(v));
  }
  return nodes;
}

inline std::vector<NodeId> node_sequence(const Topology& t, const Route& r) {
  const auto steps = r.steps();
  return node_sequence(t, r.src, steps);
}

/// Channels crossed by the route, in order; empty if a link is dead.
inline std::vector<ChannelId> route_channels(const Topology& t, const Route& r) {
  std::vector<ChannelId> out;
  NodeId u = r.src;
  for (Direction d : r.steps()) {
    const int v = t.neighbor_or_none(u, d);
    if (v < 0) return {};
    out.push_back(t.channel_id(u, d));
    u = static_cast<NodeId>(v);
  }
  return out;
}

/// Order-violating turns the router may take (augmentation output).
class TurnSet {
 public:
  TurnSet() = default;
  explicit TurnSet(std::span<const ChannelDependency> turns) : turns_(turns.begin(), turns.end()) {}
  bool contains(ChannelId from, ChannelId to) const { return turns_.contains({from, to}); }
  std::size_t size() const { return turns_.size(); }
  const std::set<ChannelDependency>& items() const { return turns_; }

 private:
  std::set<ChannelDependency> turns_;
};

enum class ViolationKind {
  DeadLink,
  WrongEndpoint,
  EmptyBody,
  DirectionOrder,
  DirectionBit,
  FirstStep,
  LastStep,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DeadLink: return "dead-link";
    case ViolationKind::WrongEndpoint: return "wrong-endpoint";
    case ViolationKind::EmptyBody: return "empty-body";
    case ViolationKind::DirectionOrder: return "order-violation";
    case ViolationKind::DirectionBit: return "direction-bit-violation";
    case ViolationKind::FirstStep: return "first-step-violation";
    case ViolationKind::LastStep: return "last-step-violation";
  }
  return "unknown";
}

struct RouteViolation {
  ViolationKind kind;
  std::size_t step = 0;  // 1-based position in steps()
  std::string message;
};

/// Checks a route against the router rules: live links, a non-decreasing
/// direction-bit compliant body, an FS that precedes the body in direction
/// order (or is a registered turn), and an LS that follows it (or is a
/// registered turn) without reversing a used dimension.
inline std::optional<RouteViolation> validate_route(const Topology& t, const Route& r,
                                                    const TurnSet& relaxed = {}) {
  const auto steps = r.steps();
  auto fail = [&](ViolationKind k, std::size_t step, std::string msg) {
    return std::optional<RouteViolation>(RouteViolation{k, step, std::move(msg)});
  };
  const auto nodes = node_sequence(t, r.src, steps);
  if (nodes.empty()) {
    std::size_t i = 0;
    NodeId u = r.src;
    for (; i < steps.size(); ++i) {
      const int v = t.neighbor_or_none(u, steps[i]);
      if (v < 0) break;
      u = static_cast<NodeId>(v);
    }
    return fail(ViolationKind::DeadLink, i + 1,
                "step " + std::to_string(i + 1) + " " + steps[i].name() + " from " + t.format(u) +
                    " crosses a dead link");
  }
  if (nodes.back() != r.dst) {
    return fail(ViolationKind::WrongEndpoint, steps.size(),
                "route ends at " + t.format(nodes.back()) + ", expected " + t.format(r.dst));
  }
  if (r.body.empty()) {
    if (!r.fs && !r.ls) return std::nullopt;
    return fail(ViolationKind::EmptyBody, 1, "first/last step without a body");
  }

  const std::size_t offset = r.fs ? 1 : 0;
  DirbitVector used(0, t.dimensions());
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    const Direction d = r.body[i];
    if (i > 0 && d < r.body[i - 1]) {
      return fail(ViolationKind::DirectionOrder, offset + i + 1,
                  "step " + std::to_string(offset + i + 1) + " " + d.name() + " follows " +
                      r.body[i - 1].name());
    }
    if (!used.admits(d)) {
      return fail(ViolationKind::DirectionBit, offset + i + 1,
                  "step " + std::to_string(offset + i + 1) + " " + d.name() +
                      " reverses a used dimension");
    }
    used = used.with(d);
  }

  if (r.fs) {
    const Direction fs = *r.fs;
    const Direction first = r.body.front();
    if (!fs.is_positive()) {
      return fail(ViolationKind::FirstStep, 1, "first step " + fs.name() + " is not positive");
    }
    if (!(fs < first)) {
      const ChannelId a = t.channel_id(nodes[0], fs);
      const ChannelId b = t.channel_id(nodes[1], first);
      if (!(first < fs) || !relaxed.contains(a, b)) {
        return fail(ViolationKind::FirstStep, 2,
                    "turn " + fs.name() + " -> " + first.name() + " at " + t.format(nodes[1]) +
                        " is not permitted");
      }
    }
  }
  if (r.ls) {
    const Direction ls = *r.ls;
    const Direction last = r.body.back();
    const std::size_t at = steps.size();
    if (!ls.is_negative()) {
      return fail(ViolationKind::LastStep, at, "last step " + ls.name() + " is not negative");
    }
    if (!used.admits(ls)) {
      return fail(ViolationKind::DirectionBit, at,
                  "last step " + ls.name() + " reverses a used dimension");
    }
    if (!(last < ls)) {
      const ChannelId a = t.channel_id(nodes[at - 2], last);
      const ChannelId b = t.channel_id(nodes[at - 1], ls);
      if (!(ls < last) || !relaxed.contains(a, b)) {
        return fail(ViolationKind::LastStep, at,
                    "turn " + last.name() + " -> " + ls.name() + " at " +
                        t.format(nodes[at - 1]) + " is not permitted");
      }
    }
  }
  return std::nullopt;
}

/// Picks the parse of a step sequence that uses the fewest relaxations:
/// plain body first, then body+LS, FS+body, FS+body+LS. Returns nullopt
/// if no parse is legal.
inline std::optional<Route> canonical_route(const Topology& t, NodeId src,
                                            std::span<const Direction> steps,
                                            const TurnSet& relaxed = {}) {
  const auto nodes = node_sequence(t, src, steps);
  if (nodes.empty()) return std::nullopt;
  for (int shape = 0; shape < 4; ++shape) {
    const bool with_fs = shape >= 2;
    const bool with_ls = shape % 2 == 1;
    const std::size_t extra = (with_fs ? 1 : 0) + (with_ls ? 1 : 0);
    if (steps.size() < extra + 1) continue;
    Route r;
    r.src = src;
    r.dst = nodes.back();
    std::size_t lo = 0, hi = steps.size();
    if (with_fs) r.fs = steps[lo++];
    if (with_ls) r.ls = steps[--hi];
    r.body.assign(steps.begin() + lo, steps.begin() + hi);
    if (!validate_route(t, r, relaxed)) return r;
  }
  return std::nullopt;
}

inline std::optional<Route> canonical_route(const Topology& t, const Route& r,
                                            const TurnSet& relaxed = {}) {
  const auto steps = r.steps();
  return canonical_route(t, r.src, steps, relaxed);
}

class RouteDecodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reads the route off a Begin [FS] Dirbit* [LS] End vertex path.
inline Route decode_rg_path(const RoutingGraph& rg, std::span<const VertexId> path) {
  if (path.size() < 2) throw RouteDecodeError("path needs at least Begin and End");
  const Topology& t = rg.topology();
  const RGVertex first = rg.vertex(path.front());
  const RGVertex last = rg.vertex(path.back());
  if (first.kind != VertexKind::Begin) throw RouteDecodeError("path does not start at Begin");
  if (last.kind != VertexKind::End) throw RouteDecodeError("path does not finish at End");

  Route r;
  r.src = first.node;
  r.dst = last.node;
  // 0 = after Begin, 1 = after FS, 2 = in body, 3 = after LS
  int phase = 0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const RGVertex prev = rg.vertex(path[i - 1]);
    const RGVertex v = rg.vertex(path[i]);
    const auto step = v.incoming();
    if (!step) throw RouteDecodeError("unexpected Begin/End inside the path");
    if (t.neighbor_or_none(prev.node, *step) != static_cast<int>(v.node)) {
      throw RouteDecodeError("consecutive vertices are not linked by " + step->name());
    }
    switch (v.kind) {
      case VertexKind::FirstStep:
        if (phase != 0) throw RouteDecodeError("first step after the route started");
        r.fs = v.dir;
        phase = 1;
        break;
      case VertexKind::Dirbit:
        if (phase > 2) throw RouteDecodeError("body step after the last step");
        r.body.push_back(*step);
        phase = 2;
        break;
      case VertexKind::LastStep:
        if (phase != 2) throw RouteDecodeError("last step without a body");
        r.ls = v.dir;
        phase = 3;
        break;
      default:
        throw RouteDecodeError("unexpected vertex kind");
    }
  }
  if (rg.node_of(path[path.size() - 2]) != r.dst) {
    throw RouteDecodeError("End is not at the last visited node");
  }
  if (phase == 1) throw RouteDecodeError("first step without a body");
  return r;
}

/// Turn count: adjacent steps in different directions.
inline int turn_count(const Route& r) {
  const auto steps = r.steps();
  int turns = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) turns += steps[i] != steps[i - 1] ? 1 : 0;
  return turns;
}

/// Exactly one route per ordered live pair.
class RoutingTable {
 public:
  RoutingTable() = default;
  explicit RoutingTable(Topology t)
      : topology_(std::move(t)), routes_(topology_.node_slots() * topology_.node_slots()) {}

  const Topology& topology() const { return topology_; }

  void set(Route r) {
    auto& slot = routes_.at(r.src * topology_.node_slots() + r.dst);
    if (!slot) ++size_;
    slot = std::move(r);
  }
  const std::optional<Route>& get(NodeId src, NodeId dst) const {
    return routes_[src * topology_.node_slots() + dst];
  }
  bool contains(NodeId src, NodeId dst) const { return get(src, dst).has_value(); }
  std::size_t size() const { return size_; }

  /// Routes in (src, dst) order.
  std::vector<Route> routes() const {
    std::vector<Route> out;
    out.reserve(size_);
    for (const auto& r : routes_) {
      if (r) out.push_back(*r);
    }
    return out;
  }

  /// Live ordered pairs without a route.
  std::vector<std::pair<NodeId, NodeId>> missing_pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId s : topology_.live_nodes()) {
      for (NodeId d : topology_.live_nodes()) {
        if (s != d && !contains(s, d)) out.push_back({s, d});
      }
    }
    return out;
  }

  friend bool operator==(const RoutingTable& a, const RoutingTable& b) {
    return a.topology_.dims() == b.topology_.dims() && a.routes_ == b.routes_;
  }

 private:
  Topology topology_;
  std::vector<std::optional<Route>> routes_;
  std::size_t size_ = 0;
};

/// Routing table text format, one line per ordered pair:
///
///     (0,0) -> (1,1) : FS:+Y +X | nodes: (0,0) (0,1) (1,1)
///
/// with `LS:<dir>` after the body when present. Lines starting with `#`
/// are comments.
inline std::string write_table(const RoutingTable& table) {
  const Topology& t = table.topology();
  std::ostringstream out;
  out << "# dims:";
  for (int d : t.dims()) out << ' ' << d;
  out << " routes: " << table.size() << '\n';
  for (const Route& r : table.routes()) {
    out << t.format(r.src) << " -> " << t.format(r.dst) << " :";
    if (r.fs) out << " FS:" << r.fs->name();
    for (Direction d : r.body) out << ' ' << d.name();
    if (r.ls) out << " LS:" << r.ls->name();
    out << " | nodes:";
    for (NodeId u : node_sequence(t, r)) out << ' ' << t.format(u);
    out << '\n';
  }
  return out.str();
}

inline RoutingTable parse_table(const Topology& t, std::istream& in) {
  RoutingTable table(t);
  const int n = t.dimensions();
  std::string raw;
  int line = 0;
  auto coord = [&](const std::string& text, int at) {
    const auto toks = detail::coordinate_tokens(text);
    if (static_cast<int>(toks.size()) != n) {
      throw ParseError("line " + std::to_string(at) + ": bad coordinates '" + text + "'");
    }
    Coord c;
    for (const auto& tok : toks) c.push_back(detail::parse_int(tok, at));
    for (int j = 0; j < n; ++j) {
      if (c[j] < 0 || c[j] >= t.dims()[j]) {
        throw ParseError("line " + std::to_string(at) + ": coordinate out of range");
      }
    }
    return t.id(c);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = detail::trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const auto arrow = text.find("->");
    const auto colon = text.find(':', arrow == std::string::npos ? 0 : arrow);
    const auto bar = text.find('|');
    if (arrow == std::string::npos || colon == std::string::npos || bar == std::string::npos ||
        !(arrow < colon && colon < bar)) {
      throw ParseError("line " + std::to_string(line) + ": expected 'src -> dst : steps | nodes: ...'");
    }
    Route r;
    r.src = coord(text.substr(0, arrow), line);
    r.dst = coord(text.substr(arrow + 2, colon - arrow - 2), line);
    std::istringstream steps(text.substr(colon + 1, bar - colon - 1));
    try {
      for (std::string tok; steps >> tok;) {
        if (tok.starts_with("FS:")) {
          if (r.fs || !r.body.empty()) throw ParseError("FS must come first");
          r.fs = parse_direction(tok.substr(3), n);
        } else if (tok.starts_with("LS:")) {
          if (r.ls) throw ParseError("duplicate LS");
          r.ls = parse_direction(tok.substr(3), n);
        } else {
          if (r.ls) throw ParseError("body step after LS");
          r.body.push_back(parse_direction(tok, n));
        }
      }
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
    if (r.src == r.dst) throw ParseError("line " + std::to_string(line) + ": src equals dst");
    if (table.contains(r.src, r.dst)) {
      throw ParseError("line " + std::to_string(line) + ": duplicate pair");
    }
    table.set(std::move(r));
  }
  return table;
}

inline RoutingTable parse_table(const Topology& t, const std::string& text) {
  std::istringstream in(text);
  return parse_table(t, in);
}

inline RoutingTable load_table(const Topology& t, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file '" + path + "'");
  return parse_table(t, in);
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ROUTES_HPP
