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

#ifndef TORUS_ROUTE_TOPOLOGY_IO_HPP
#define TORUS_ROUTE_TOPOLOGY_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "torus_route/topology.hpp"

namespace torus_route {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Splits on whitespace and commas; parentheses are ignored.
inline std::vector<std::string> coordinate_tokens(std::string_view s) {
  std::string cleaned(s);
  for (char& ch : cleaned) {
    if (ch == ',' || ch == '(' || ch == ')') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + tok + "'");
  }
}

}  // namespace detail

/// Reads the topology text format:
///
///     dims: 4 2 2 2
///     fail-node: 1 0 0 0
///     fail-link: 0 0 0 0 +X
///
/// Blank lines and `#` comments are skipped.
inline Topology parse_topology(std::istream& in) {
  std::vector<int> dims;
  std::vector<std::pair<std::vector<std::string>, int>> node_lines;
  std::vector<std::pair<std::vector<std::string>, int>> link_lines;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = detail::trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": missing ':'");
    }
    const std::string key = detail::trim(std::string_view(text).substr(0, colon));
    auto tokens = detail::coordinate_tokens(std::string_view(text).substr(colon + 1));
    if (key == "dims") {
      if (!dims.empty()) throw ParseError("line " + std::to_string(line) + ": duplicate dims");
      for (const auto& tok : tokens) dims.push_back(detail::parse_int(tok, line));
    } else if (key == "fail-node") {
      node_lines.emplace_back(std::move(tokens), line);
    } else if (key == "fail-link") {
      link_lines.emplace_back(std::move(tokens), line);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (dims.empty()) throw ParseError("topology file has no dims line");
  const int n = static_cast<int>(dims.size());

  auto to_coord = [&](const std::vector<std::string>& toks, std::size_t count, int at) {
    if (toks.size() < count) {
      throw ParseError("line " + std::to_string(at) + ": expected " + std::to_string(n) +
                       " coordinates");
    }
    Coord c;
    for (std::size_t i = 0; i < count; ++i) c.push_back(detail::parse_int(toks[i], at));
    return c;
  };

  std::vector<Coord> failed_nodes;
  for (const auto& [toks, at] : node_lines) {
    if (static_cast<int>(toks.size()) != n) {
      throw ParseError("line " + std::to_string(at) + ": fail-node needs " + std::to_string(n) +
                       " coordinates");
    }
    failed_nodes.push_back(to_coord(toks, n, at));
  }
  std::vector<std::pair<Coord, Direction>> failed_links;
  for (const auto& [toks, at] : link_lines) {
    if (static_cast<int>(toks.size()) != n + 1) {
      throw ParseError("line " + std::to_string(at) + ": fail-link needs coordinates and a direction");
    }
    try {
      failed_links.emplace_back(to_coord(toks, n, at), parse_direction(toks.back(), n));
    } catch (const TopologyError& e) {
      throw ParseError("line " + std::to_string(at) + ": " + e.what());
    }
  }
  try {
    return Topology::make_torus(std::move(dims), failed_nodes, failed_links);
  } catch (const TopologyError& e) {
    throw ParseError(e.what());
  }
}

inline Topology parse_topology(const std::string& text) {
  std::istringstream in(text);
  return parse_topology(in);
}

inline Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open topology file '" + path + "'");
  return parse_topology(in);
}

inline std::string write_topology(const Topology& t) {
  std::ostringstream out;
  out << "dims:";
  for (int d : t.dims()) out << ' ' << d;
  out << '\n';
  auto coords = [&](NodeId u) {
    std::string s;
    for (int c : t.coords(u)) s += ' ' + std::to_string(c);
    return s;
  };
  for (NodeId u : t.failed_nodes()) out << "fail-node:" << coords(u) << '\n';
  const Topology healthy = Topology::make_torus(t.dims());
  for (const auto& [u, dir] : t.failed_links()) {
    // One line per physical link; the reverse is implied.
    const Direction d = t.direction(dir);
    const int v = healthy.neighbor_or_none(u, d);
    if (std::pair<NodeId, int>{static_cast<NodeId>(v), d.opposite().index()} <
        std::pair<NodeId, int>{u, dir}) {
      continue;
    }
    out << "fail-link:" << coords(u) << ' ' << d.name() << '\n';
  }
  return out.str();
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_TOPOLOGY_IO_HPP
