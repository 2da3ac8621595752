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

#ifndef TORUS_ROUTE_METRICS_HPP
#define TORUS_ROUTE_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "torus_route/routes.hpp"
#include "torus_route/topology.hpp"

namespace torus_route {

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Route count per channel id; dead channel slots stay zero.
using ChannelLoads = std::vector<std::uint64_t>;

inline void add_route_load(const Topology& t, const Route& r, ChannelLoads& loads,
                           std::uint64_t times = 1) {
  const auto channels = route_channels(t, r);
  if (channels.size() != r.length()) {
    throw IntegrityError("route " + t.format(r.src) + " -> " + t.format(r.dst) +
                         " crosses a dead channel");
  }
  for (ChannelId c : channels) loads[c] += times;
}

/// gamma_c: number of table routes crossing each channel.
inline ChannelLoads channel_loads(const RoutingTable& table) {
  const Topology& t = table.topology();
  ChannelLoads loads(t.channel_slots(), 0);
  for (const Route& r : table.routes()) add_route_load(t, r, loads);
  return loads;
}

/// sigma(k) = (1/|C| * sum |gamma_perfect - gamma_c|^k)^(1/k)
inline double deviation(std::span<const double> loads, double gamma_perfect, double k) {
  if (loads.empty()) throw std::invalid_argument("deviation over an empty channel set");
  if (k < 1.0) throw std::invalid_argument("deviation exponent must be >= 1");
  double acc = 0.0;
  for (double g : loads) acc += std::pow(std::abs(gamma_perfect - g), k);
  return std::pow(acc / static_cast<double>(loads.size()), 1.0 / k);
}

/// Loads of live channels only, in channel id order.
inline std::vector<double> live_loads(const Topology& t, const ChannelLoads& loads) {
  std::vector<double> out;
  out.reserve(t.channel_count());
  for (ChannelId c : t.live_channels()) out.push_back(static_cast<double>(loads[c]));
  return out;
}

/// Sum of minimal distances over the given ordered pairs.
inline std::uint64_t minimal_distance_sum(const Topology& t,
                                          std::span<const std::pair<NodeId, NodeId>> pairs) {
  std::uint64_t total = 0;
  NodeId cached = ~NodeId{0};
  std::vector<int> dist;
  for (const auto& [s, d] : pairs) {
    if (t.has_faults()) {
      if (s != cached) {
        dist = t.distances_from(s);
        cached = s;
      }
      if (dist[d] == kUnreachable) throw std::invalid_argument("disconnected topology");
      total += static_cast<std::uint64_t>(dist[d]);
    } else {
      total += static_cast<std::uint64_t>(t.distance(s, d));
    }
  }
  return total;
}

inline std::vector<std::pair<NodeId, NodeId>> all_pairs(const Topology& t) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId s : t.live_nodes()) {
    for (NodeId d : t.live_nodes()) {
      if (s != d) out.push_back({s, d});
    }
  }
  return out;
}

/// gamma_perfect: total minimal route length over all ordered pairs / |C|.
inline double perfect_channel_load(const Topology& t) {
  if (t.channel_count() == 0) throw std::invalid_argument("topology has no channels");
  const auto pairs = all_pairs(t);
  return static_cast<double>(minimal_distance_sum(t, pairs)) /
         static_cast<double>(t.channel_count());
}

struct LoadReport {
  std::uint64_t pi = 0;
  std::uint64_t min_load = 0;
  double gamma_perfect = 0.0;
  std::map<int, double> sigma;
  std::size_t max_d = 0;
  std::uint64_t total_load = 0;
  ChannelLoads per_channel;
};

inline LoadReport make_report(const Topology& t, const ChannelLoads& loads, double gamma_perfect,
                              std::size_t max_d, std::span<const int> exponents = {}) {
  LoadReport rep;
  rep.per_channel = loads;
  rep.gamma_perfect = gamma_perfect;
  rep.max_d = max_d;
  const auto live = live_loads(t, loads);
  if (!live.empty()) {
    rep.pi = static_cast<std::uint64_t>(*std::max_element(live.begin(), live.end()));
    rep.min_load = static_cast<std::uint64_t>(*std::min_element(live.begin(), live.end()));
  }
  for (double g : live) rep.total_load += static_cast<std::uint64_t>(g);
  static constexpr int kDefault[] = {4};
  for (int k : exponents.empty() ? std::span<const int>(kDefault) : exponents) {
    rep.sigma[k] = deviation(live, gamma_perfect, k);
  }
  return rep;
}

inline std::size_t max_route_length(const RoutingTable& table) {
  std::size_t out = 0;
  for (const Route& r : table.routes()) out = std::max(out, r.length());
  return out;
}

/// Full-table report: loads, pi, min, gamma_perfect, sigma(k), max D.
inline LoadReport load_report(const RoutingTable& table, std::span<const int> exponents = {}) {
  const Topology& t = table.topology();
  return make_report(t, channel_loads(table), perfect_channel_load(t), max_route_length(table),
                     exponents);
}

enum class TrafficPattern { Transpose, Neighbor, Tornado, Alltoall };

inline const char* to_string(TrafficPattern p) {
  switch (p) {
    case TrafficPattern::Transpose: return "transpose";
    case TrafficPattern::Neighbor: return "neighbor";
    case TrafficPattern::Tornado: return "tornado";
    case TrafficPattern::Alltoall: return "alltoall";
  }
  return "?";
}

inline TrafficPattern parse_pattern(const std::string& name) {
  if (name == "transpose") return TrafficPattern::Transpose;
  if (name == "neighbor") return TrafficPattern::Neighbor;
  if (name == "tornado") return TrafficPattern::Tornado;
  if (name == "alltoall") return TrafficPattern::Alltoall;
  throw std::invalid_argument("unknown traffic pattern '" + name + "'");
}

/// Ordered (src, dst) pairs of a synthetic pattern over live nodes.
///
/// Transpose reverses the coordinate vector when the dims read the same
/// backwards, otherwise rotates coordinates left (taken modulo each size).
/// Neighbor sends to every distinct direct neighbor. Tornado shifts by
/// ceil(d_1/2) - 1 hops in +X. Pairs with src == dst are dropped.
inline std::vector<std::pair<NodeId, NodeId>> pattern_pairs(const Topology& t, TrafficPattern p) {
  std::vector<std::pair<NodeId, NodeId>> out;
  const int n = t.dimensions();
  const auto& dims = t.dims();
  for (NodeId s : t.live_nodes()) {
    const Coord c = t.coords(s);
    switch (p) {
      case TrafficPattern::Alltoall:
        for (NodeId d : t.live_nodes()) {
          if (d != s) out.push_back({s, d});
        }
        break;
      case TrafficPattern::Neighbor: {
        std::vector<NodeId> seen;
        for (Direction d : t.directions()) {
          const auto v = t.neighbor(s, d);
          if (v && *v != s && std::find(seen.begin(), seen.end(), *v) == seen.end()) {
            seen.push_back(*v);
            out.push_back({s, *v});
          }
        }
        break;
      }
      case TrafficPattern::Tornado: {
        Coord target = c;
        const int shift = (dims[0] + 1) / 2 - 1;
        target[0] = (c[0] + shift) % dims[0];
        const NodeId d = t.id(target);
        if (d != s) out.push_back({s, d});
        break;
      }
      case TrafficPattern::Transpose: {
        const bool palindrome = std::equal(dims.begin(), dims.end(), dims.rbegin());
        Coord target(n);
        for (int j = 0; j < n; ++j) {
          target[j] = palindrome ? c[n - 1 - j] : c[(j + 1) % n] % dims[j];
        }
        const NodeId d = t.id(target);
        if (d != s) out.push_back({s, d});
        break;
      }
    }
  }
  if (p != TrafficPattern::Alltoall) {
    std::erase_if(out, [&](const auto& pr) { return !t.is_live(pr.second); });
  }
  return out;
}

/// Loads induced by the pattern's routes alone; gamma_perfect is the
/// pattern's minimal total length spread over all live channels.
inline LoadReport pattern_loads(const RoutingTable& table, TrafficPattern p,
                                std::span<const int> exponents = {}) {
  const Topology& t = table.topology();
  const auto pairs = pattern_pairs(t, p);
  ChannelLoads loads(t.channel_slots(), 0);
  std::size_t max_d = 0;
  for (const auto& [s, d] : pairs) {
    if (!t.is_live(s) || !t.is_live(d)) throw IntegrityError("pattern references a failed node");
    const auto& r = table.get(s, d);
    if (!r) throw IntegrityError("pattern pair missing from table");
    add_route_load(t, *r, loads);
    max_d = std::max(max_d, r->length());
  }
  const double gamma = pairs.empty() ? 0.0
                                     : static_cast<double>(minimal_distance_sum(t, pairs)) /
                                           static_cast<double>(t.channel_count());
  return make_report(t, loads, gamma, max_d, exponents);
}

/// {pi, min_load, gamma_perfect, sigma: {k: value}, max_d, per_channel?}
inline nlohmann::json to_json(const Topology& t, const LoadReport& rep, bool per_channel = false) {
  nlohmann::json j;
  j["pi"] = rep.pi;
  j["min_load"] = rep.min_load;
  j["gamma_perfect"] = rep.gamma_perfect;
  nlohmann::json sigma = nlohmann::json::object();
  for (const auto& [k, v] : rep.sigma) sigma[std::to_string(k)] = v;
  j["sigma"] = sigma;
  j["max_d"] = rep.max_d;
  if (per_channel) {
    nlohmann::json channels = nlohmann::json::object();
    for (ChannelId c : t.live_channels()) channels[t.format_channel(c)] = rep.per_channel[c];
    j["per_channel"] = channels;
  }
  return j;
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_METRICS_HPP
