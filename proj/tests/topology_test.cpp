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


#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <set>

#include "torus_route/topology.hpp"
#include "torus_route/topology_io.hpp"

namespace torus_route {
namespace {

Direction dir(const char* name, int n) { return parse_direction(name, n); }

// Distances by flooding coordinates, independent of Topology's own BFS.
std::map<Coord, int> flood(const std::vector<int>& dims, const Coord& from) {
  std::map<Coord, int> dist{{from, 0}};
  std::deque<Coord> queue{from};
  while (!queue.empty()) {
    const Coord c = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < dims.size(); ++j) {
      for (int step : {1, -1}) {
        if (dims[j] == 2 && ((step == 1 && c[j] == 1) || (step == -1 && c[j] == 0))) continue;
        Coord next = c;
        next[j] = (c[j] + step + dims[j]) % dims[j];
        if (dist.emplace(next, dist[c] + 1).second) queue.push_back(next);
      }
    }
  }
  return dist;
}

TEST(Direction, OrderAndOpposite) {
  const int n = 4;
  EXPECT_LT(dir("+X", n), dir("+Y", n));
  EXPECT_LT(dir("+K", n), dir("-X", n));
  EXPECT_LT(dir("-Z", n), dir("-K", n));
  EXPECT_EQ(dir("+Y", n).opposite(), dir("-Y", n));
  EXPECT_EQ(dir("-K", n).opposite(), dir("+K", n));
  EXPECT_EQ(dir("-Z", n).sign(), -1);
  EXPECT_EQ(dir("-Z", n).dimension(), 2);
}

TEST(Direction, ParsesUnicodeMinus) {
  EXPECT_EQ(parse_direction("\xE2\x88\x92Y", 2), dir("-Y", 2));
  EXPECT_EQ(dir("-Y", 2).name(), "-Y");
  EXPECT_THROW(parse_direction("+Z", 2), TopologyError);
  EXPECT_THROW(parse_direction("X", 2), TopologyError);
}

TEST(MakeTorus, DesmosHas32Nodes) {
  const auto t = Topology::make_torus({4, 2, 2, 2});
  EXPECT_EQ(t.node_count(), 32u);
}

TEST(MakeTorus, PairIsOneMeshLink) {
  const auto t = Topology::make_torus({2});
  EXPECT_EQ(t.node_count(), 2u);
  EXPECT_EQ(t.channel_count(), 2u);
  EXPECT_FALSE(t.neighbor(1, dir("+X", 1)).has_value());
  EXPECT_EQ(t.neighbor(1, dir("-X", 1)), NodeId{0});
  EXPECT_EQ(t.neighbor(0, dir("+X", 1)), NodeId{1});
}

TEST(MakeTorus, FailedLinkIsSymmetric) {
  const auto t = Topology::make_torus({3, 3}, {}, {{{0, 0}, dir("+X", 2)}});
  EXPECT_FALSE(t.neighbor(t.id({0, 0}), dir("+X", 2)).has_value());
  EXPECT_FALSE(t.neighbor(t.id({1, 0}), dir("-X", 2)).has_value());
  EXPECT_TRUE(t.neighbor(t.id({1, 0}), dir("+X", 2)).has_value());
}

TEST(MakeTorus, RejectsBadInput) {
  EXPECT_THROW(Topology::make_torus({}), TopologyError);
  EXPECT_THROW(Topology::make_torus({2, 2, 2, 2, 2}), TopologyError);
  EXPECT_THROW(Topology::make_torus({4, 1}), TopologyError);
  EXPECT_THROW(Topology::make_torus({4}, {{4}}), TopologyError);
  EXPECT_THROW(Topology::make_torus({4, 4}, {{0}}), TopologyError);
  EXPECT_THROW(Topology::make_torus({2}, {}, {{{1}, dir("+X", 1)}}), TopologyError);
}

TEST(Neighbor, Wraparound) {
  const auto t = Topology::make_torus({3, 3});
  EXPECT_EQ(t.neighbor(t.id({2, 0}), dir("+X", 2)), t.id({0, 0}));
  const auto ring = Topology::make_torus({4});
  EXPECT_EQ(ring.neighbor(3, dir("+X", 1)), NodeId{0});
}

TEST(Neighbor, FailedNodeCutsLinks) {
  const auto t = Topology::make_torus({4}, {{1}});
  EXPECT_FALSE(t.neighbor(0, dir("+X", 1)).has_value());
  EXPECT_FALSE(t.neighbor(2, dir("-X", 1)).has_value());
  EXPECT_EQ(t.node_count(), 3u);
}

TEST(Neighbor, ReverseHopReturns) {
  for (auto dims : std::vector<std::vector<int>>{{2}, {5}, {3, 2}, {4, 2, 3}, {2, 3, 2, 4}}) {
    const auto t = Topology::make_torus(dims);
    for (NodeId u : t.live_nodes()) {
      for (Direction d : t.directions()) {
        if (auto v = t.neighbor(u, d)) {
          EXPECT_EQ(t.neighbor(*v, d.opposite()), u);
        }
      }
    }
  }
}

TEST(Channels, CountMatchesLinkEnumeration) {
  for (auto dims : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {3, 4}, {4, 2, 2, 2}, {3, 2, 5}}) {
    const auto t = Topology::make_torus(dims);
    std::size_t nodes = 1;
    for (int d : dims) nodes *= d;
    // Each dimension adds one directed channel per node and direction,
    // except size-2 dimensions where half of them would wrap.
    std::size_t expected = 0;
    for (int d : dims) expected += d == 2 ? nodes : 2 * nodes;
    EXPECT_EQ(t.channel_count(), expected);
    std::size_t counted = 0;
    for (NodeId u = 0; u < nodes; ++u) {
      const Coord c = t.coords(u);
      for (std::size_t j = 0; j < dims.size(); ++j) {
        counted += (dims[j] > 2 || c[j] == 0) ? 1 : 0;  // +dir
        counted += (dims[j] > 2 || c[j] == 1) ? 1 : 0;  // -dir
      }
    }
    EXPECT_EQ(t.channel_count(), counted);
  }
}

TEST(Distance, Examples) {
  const auto t = Topology::make_torus({4, 2, 2, 2});
  EXPECT_EQ(t.distance(t.id({0, 0, 0, 0}), t.id({2, 1, 1, 1})), 5);
  EXPECT_EQ(t.distance(7, 7), 0);
  const auto ring = Topology::make_torus({5});
  EXPECT_EQ(ring.distance(0, 3), 2);
}

TEST(Distance, MatchesFlooding) {
  for (auto dims : std::vector<std::vector<int>>{{5}, {3, 2}, {4, 3}, {2, 5, 3}}) {
    const auto t = Topology::make_torus(dims);
    for (NodeId a : t.live_nodes()) {
      const auto dist = flood(dims, t.coords(a));
      for (NodeId b : t.live_nodes()) {
        EXPECT_EQ(t.distance(a, b), dist.at(t.coords(b)));
        EXPECT_EQ(t.distance(a, b), t.distance(b, a));
      }
    }
  }
}

TEST(Distance, FaultsUseLinkGraph) {
  const auto t = Topology::make_torus({4}, {}, {{{0}, dir("+X", 1)}});
  EXPECT_EQ(t.distance(0, 1), 3);
  EXPECT_EQ(t.distance(1, 0), 3);
  const auto cut = Topology::make_torus({2, 2}, {{0, 1}, {1, 0}});
  EXPECT_EQ(cut.distance(0, 3), kUnreachable);
}

TEST(MostRemote, Examples) {
  const auto ring = Topology::make_torus({8});
  const std::vector<NodeId> cands{1, 4, 7};
  EXPECT_EQ(ring.most_remote(cands, 0), NodeId{4});
  const std::vector<NodeId> self{3};
  EXPECT_EQ(ring.most_remote(self, 3), NodeId{3});
  EXPECT_THROW(ring.most_remote(std::vector<NodeId>{}, 0), std::invalid_argument);
}

TEST(MostRemote, DesmosFarthestIsSmallestOfTies) {
  const std::vector<int> dims{4, 2, 2, 2};
  const auto t = Topology::make_torus(dims);
  std::vector<NodeId> others(t.live_nodes().begin() + 1, t.live_nodes().end());
  const auto dist = flood(dims, {0, 0, 0, 0});
  int best = -1;
  Coord expect;
  for (const auto& [c, d] : dist) {  // map order is coordinate order = id order
    if (d > best) {
      best = d;
      expect = c;
    }
  }
  EXPECT_EQ(expect, (Coord{2, 1, 1, 1}));
  EXPECT_EQ(t.most_remote(others, 0), t.id(expect));
}

TEST(TopologyFile, ParsesAndRoundTrips) {
  const auto t = parse_topology(
      "# test\n"
      "dims: 4 3\n"
      "fail-node: 1,1\n"
      "fail-link: (0,0) \xE2\x88\x92Y\n");
  EXPECT_EQ(t.dims(), (std::vector<int>{4, 3}));
  EXPECT_FALSE(t.is_live(t.id({1, 1})));
  EXPECT_FALSE(t.neighbor(t.id({0, 0}), dir("-Y", 2)).has_value());
  EXPECT_FALSE(t.neighbor(t.id({0, 2}), dir("+Y", 2)).has_value());
  const auto again = parse_topology(write_topology(t));
  EXPECT_EQ(again.dims(), t.dims());
  EXPECT_EQ(again.failed_nodes(), t.failed_nodes());
  EXPECT_EQ(again.failed_links(), t.failed_links());
}

TEST(TopologyFile, Errors) {
  EXPECT_THROW(parse_topology(""), ParseError);
  EXPECT_THROW(parse_topology("dims: 4 x\n"), ParseError);
  EXPECT_THROW(parse_topology("dims: 4\nfail-node: 9\n"), ParseError);
  EXPECT_THROW(parse_topology("dims: 4\nfail-link: 0 +Y\n"), ParseError);
  EXPECT_THROW(parse_topology("dims: 4\ncolor: red\n"), ParseError);
  EXPECT_THROW(load_topology("/nonexistent/file.topo"), ParseError);
}

}  // namespace
}  // namespace torus_route
