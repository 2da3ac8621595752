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

#include "torus_route/algorithms/route_search.hpp"
#include "torus_route/routes.hpp"
#include "torus_route/routing_graph.hpp"

namespace torus_route {
namespace {

std::vector<Direction> dirs(std::initializer_list<const char*> names, int n) {
  std::vector<Direction> out;
  for (const char* name : names) out.push_back(parse_direction(name, n));
  return out;
}

Route body_route(const Topology& t, Coord src, std::initializer_list<const char*> names) {
  Route r;
  r.src = t.id(src);
  r.body = dirs(names, t.dimensions());
  const auto nodes = node_sequence(t, r.src, r.body);
  r.dst = nodes.back();
  return r;
}

TEST(ValidateRoute, PlainBody) {
  const auto t = Topology::make_torus({3, 3});
  EXPECT_FALSE(validate_route(t, body_route(t, {0, 0}, {"+X", "+Y"})));
}

TEST(ValidateRoute, OrderViolation) {
  const auto t = Topology::make_torus({3, 3});
  const auto v = validate_route(t, body_route(t, {0, 0}, {"+Y", "+X"}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::DirectionOrder);
  EXPECT_EQ(v->step, 2u);
}

TEST(ValidateRoute, DirectionBitViolation) {
  const auto t = Topology::make_torus({4, 4});
  const auto v = validate_route(t, body_route(t, {0, 0}, {"+X", "-X"}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::DirectionBit);
  EXPECT_EQ(v->step, 2u);
}

TEST(ValidateRoute, FirstAndLastSteps) {
  const auto t = Topology::make_torus({3, 3});
  Route r;
  r.src = t.id({0, 0});
  r.fs = parse_direction("+X", 2);
  r.body = dirs({"+Y"}, 2);
  r.dst = t.id({1, 1});
  EXPECT_FALSE(validate_route(t, r));

  Route late = r;
  late.fs = parse_direction("+Y", 2);
  late.body = dirs({"+X"}, 2);
  auto v = validate_route(t, late);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::FirstStep);
  EXPECT_EQ(v->step, 2u);

  Route neg = r;
  neg.fs = parse_direction("-Y", 2);
  neg.body = dirs({"+X"}, 2);
  neg.dst = t.id({1, 2});
  v = validate_route(t, neg);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::FirstStep);
  EXPECT_EQ(v->step, 1u);

  Route ls;
  ls.src = t.id({0, 0});
  ls.body = dirs({"+X"}, 2);
  ls.ls = parse_direction("-Y", 2);
  ls.dst = t.id({1, 2});
  EXPECT_FALSE(validate_route(t, ls));

  Route ls_pos = ls;
  ls_pos.ls = parse_direction("+Y", 2);
  ls_pos.dst = t.id({1, 1});
  v = validate_route(t, ls_pos);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::LastStep);

  Route ls_back = ls;
  ls_back.body = dirs({"+Y"}, 2);
  ls_back.ls = parse_direction("-Y", 2);
  ls_back.dst = t.id({0, 0});
  v = validate_route(t, ls_back);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::DirectionBit);
}

TEST(ValidateRoute, RelaxedTurnNeedsRegistration) {
  const auto t = Topology::make_torus({3, 3});
  Route ls;
  ls.src = t.id({0, 0});
  ls.body = dirs({"-Y"}, 2);
  ls.ls = parse_direction("-X", 2);
  ls.dst = t.id({2, 2});
  auto v = validate_route(t, ls);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::LastStep);
  const std::vector<ChannelDependency> turns{
      {t.channel_id(t.id({0, 0}), parse_direction("-Y", 2)),
       t.channel_id(t.id({0, 2}), parse_direction("-X", 2))}};
  EXPECT_FALSE(validate_route(t, ls, TurnSet(turns)));
}

TEST(ValidateRoute, DeadLinkAndEndpoint) {
  const auto t = Topology::make_torus({4}, {}, {{{0}, parse_direction("+X", 1)}});
  auto v = validate_route(t, body_route(Topology::make_torus({4}), {0}, {"+X"}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::DeadLink);
  Route r = body_route(t, {1}, {"+X"});
  r.dst = t.id({3});
  v = validate_route(t, r);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, ViolationKind::WrongEndpoint);
}

TEST(CanonicalRoute, PrefersPlainBody) {
  const auto t = Topology::make_torus({3, 3});
  const auto r = canonical_route(t, t.id({0, 0}), dirs({"+X", "+Y"}, 2));
  ASSERT_TRUE(r);
  EXPECT_FALSE(r->fs);
  EXPECT_FALSE(r->ls);
  EXPECT_FALSE(canonical_route(t, t.id({0, 0}), dirs({"+Y", "+X"}, 2)));
  EXPECT_FALSE(canonical_route(t, t.id({0, 0}), dirs({"-Y", "-X"}, 2)));

  const std::vector<ChannelDependency> turns{
      {t.channel_id(t.id({0, 0}), parse_direction("+Y", 2)),
       t.channel_id(t.id({0, 1}), parse_direction("+X", 2))}};
  const auto fs = canonical_route(t, t.id({0, 0}), dirs({"+Y", "+X"}, 2), TurnSet(turns));
  ASSERT_TRUE(fs);
  EXPECT_EQ(fs->fs, parse_direction("+Y", 2));
  EXPECT_EQ(fs->body, dirs({"+X"}, 2));
}

TEST(DecodeRgPath, RoundTrip) {
  const auto t = Topology::make_torus({3, 3});
  const auto rg = build_routing_graph(t);
  const NodeId src = t.id({0, 0}), mid = t.id({0, 1}), dst = t.id({1, 1});
  const Direction py = parse_direction("+Y", 2), px = parse_direction("+X", 2);
  const std::vector<VertexId> path{rg.begin(src), rg.first_step(mid, py),
                                   rg.dirbit(dst, DirbitVector::single(px)), rg.end(dst)};
  const Route r = decode_rg_path(rg, path);
  EXPECT_EQ(r.src, src);
  EXPECT_EQ(r.dst, dst);
  ASSERT_TRUE(r.fs);
  EXPECT_EQ(*r.fs, py);
  EXPECT_EQ(r.body, std::vector<Direction>{px});
  EXPECT_TRUE(validate_route(t, r));
  const std::vector<ChannelDependency> turns{{t.channel_id(src, py), t.channel_id(mid, px)}};
  EXPECT_FALSE(validate_route(t, r, TurnSet(turns)));

  const std::vector<VertexId> lone_fs{rg.begin(src), rg.first_step(mid, py), rg.end(mid)};
  EXPECT_THROW(decode_rg_path(rg, lone_fs), RouteDecodeError);
  const std::vector<VertexId> jump{rg.begin(src), rg.dirbit(dst, DirbitVector::single(px)), rg.end(dst)};
  EXPECT_THROW(decode_rg_path(rg, jump), RouteDecodeError);
}

TEST(DecodeRgPath, EveryEnumeratedRouteValidates) {
  const auto t = Topology::make_torus({4, 3});
  const auto rg = build_routing_graph(t);
  for (NodeId s : t.live_nodes()) {
    for (NodeId d : t.live_nodes()) {
      if (s == d) continue;
      for (const Route& r : enumerate_minimal_routes(rg, s, d, 64).routes) {
        EXPECT_FALSE(validate_route(t, r));
        EXPECT_EQ(static_cast<int>(r.length()), t.distance(s, d));
      }
    }
  }
}

TEST(TurnCount, Examples) {
  const auto t = Topology::make_torus({4, 4});
  EXPECT_EQ(turn_count(body_route(t, {0, 0}, {"+X", "+X"})), 0);
  EXPECT_EQ(turn_count(body_route(t, {0, 0}, {"+X", "+Y"})), 1);
  Route r;
  r.fs = parse_direction("+Y", 2);
  r.body = dirs({"+X"}, 2);
  EXPECT_EQ(turn_count(r), 1);
  r.body = dirs({"+X", "+X", "-Y"}, 2);
  EXPECT_EQ(turn_count(r), 2);
}

TEST(RoutingTableIo, RoundTrip) {
  const auto t = Topology::make_torus({3, 3});
  const auto rg = build_routing_graph(t);
  RoutingTable table(t);
  for (NodeId s : t.live_nodes()) {
    for (NodeId d : t.live_nodes()) {
      if (s != d) table.set(enumerate_minimal_routes(rg, s, d, 1).routes.front());
    }
  }
  EXPECT_TRUE(table.missing_pairs().empty());
  const std::string text = write_table(table);
  const RoutingTable back = parse_table(t, text);
  EXPECT_TRUE(back == table);
  EXPECT_EQ(write_table(back), text);
}

TEST(RoutingTableIo, LineFormat) {
  const auto t = Topology::make_torus({3, 3});
  RoutingTable table(t);
  Route r;
  r.src = t.id({0, 0});
  r.fs = parse_direction("+Y", 2);
  r.body = dirs({"+X"}, 2);
  r.dst = t.id({1, 1});
  table.set(r);
  EXPECT_EQ(write_table(table),
            "# dims: 3 3 routes: 1\n(0,0) -> (1,1) : FS:+Y +X | nodes: (0,0) (0,1) (1,1)\n");
}

TEST(RoutingTableIo, ParseErrors) {
  const auto t = Topology::make_torus({3, 3});
  EXPECT_THROW(parse_table(t, std::string("(0,0) -> (1,1) +X +Y\n")), ParseError);
  EXPECT_THROW(parse_table(t, std::string("(0,0) -> (5,1) : +X | nodes:\n")), ParseError);
  EXPECT_THROW(parse_table(t, std::string("(0,0) -> (1,0) : +Q | nodes:\n")), ParseError);
  EXPECT_THROW(parse_table(t, std::string("(0,0) -> (0,0) : +X | nodes:\n")), ParseError);
  EXPECT_THROW(parse_table(t, std::string("(0,0) -> (1,0) : +X | x\n(0,0) -> (1,0) : +X | x\n")),
               ParseError);
  EXPECT_THROW(parse_table(t, std::string("(0,0) -> (1,0) : LS:-Y +X | x\n")), ParseError);
  const auto table = parse_table(t, std::string("(0,0) -> (2,0) : \xE2\x88\x92X | nodes: (0,0) (2,0)\n"));
  EXPECT_EQ(table.get(t.id({0, 0}), t.id({2, 0}))->body.front(), parse_direction("-X", 2));
}

}  // namespace
}  // namespace torus_route
