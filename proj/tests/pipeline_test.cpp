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

#include "torus_route/pipeline.hpp"
#include "torus_route/sweep.hpp"

namespace torus_route {
namespace {

Direction dir(const char* name) { return parse_direction(name, 2); }

struct Fixture {
  RoutingContext ctx = prepare_routing(Topology::make_torus({3, 3}));
  RoutingTable table = generate(ctx, Algorithm::Bfs).table;
  const Topology& t() const { return ctx.topology; }
};

TEST(VerifyTable, CleanTablePasses) {
  Fixture f;
  const auto rep = verify_table(f.ctx, f.table);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.deadlock.order.size(), f.t().channel_count());
}

TEST(VerifyTable, DetectsOrderViolation) {
  Fixture f;
  Route r;
  r.src = f.t().id({0, 0});
  r.dst = f.t().id({1, 1});
  r.body = {dir("+Y"), dir("+X")};
  f.table.set(r);
  const auto rep = verify_table(f.ctx, f.table);
  ASSERT_EQ(rep.invalid.size(), 1u);
  EXPECT_EQ(rep.invalid[0].src, r.src);
  EXPECT_NE(rep.invalid[0].message.find("order-violation"), std::string::npos);
  EXPECT_FALSE(rep.ok());
}

TEST(VerifyTable, DetectsMissingPair) {
  Fixture f;
  RoutingTable partial(f.t());
  for (const Route& r : f.table.routes()) {
    if (!(r.src == 0 && r.dst == 4)) partial.set(r);
  }
  const auto rep = verify_table(f.ctx, partial);
  ASSERT_EQ(rep.missing.size(), 1u);
  EXPECT_EQ(rep.missing[0], (std::pair<NodeId, NodeId>{0, 4}));
  EXPECT_TRUE(rep.valid());
}

TEST(VerifyTable, DetectsNonMinimalRoute) {
  const auto ctx = prepare_routing(Topology::make_torus({4}));
  RoutingTable table = generate(ctx, Algorithm::Sssp).table;
  Route r;
  r.src = 0;
  r.dst = 1;
  r.body.assign(3, parse_direction("-X", 1));
  table.set(r);
  const auto rep = verify_table(ctx, table);
  EXPECT_TRUE(rep.valid());
  ASSERT_EQ(rep.non_minimal.size(), 1u);
  EXPECT_EQ(rep.non_minimal[0].dst, 1u);
}

TEST(VerifyTable, DetectsDeadlockFromEditedTurns) {
  // +Y+X from (1,0), (2,1), (0,2) closes a loop with the +X+Y routes
  // leaving (0,0), (1,1), (2,2).
  Fixture f;
  for (NodeId u : f.t().live_nodes()) {
    const Coord c = f.t().coords(u);
    if (c[1] != (c[0] + 2) % 3) continue;
    Route r;
    r.src = u;
    r.dst = f.t().id({(c[0] + 1) % 3, (c[1] + 1) % 3});
    r.body = {dir("+Y"), dir("+X")};
    f.table.set(r);
  }
  const auto rep = verify_table(f.ctx, f.table);
  EXPECT_EQ(rep.invalid.size(), 3u);
  EXPECT_FALSE(rep.deadlock_free());
  EXPECT_FALSE(rep.deadlock.cycle.empty());
}

TEST(VerifyTable, FaultedMinimalityUsesRuleLength) {
  // With +X cut at 0, the only legal 0 -> 1 route is three -X hops.
  const auto t = Topology::make_torus({4}, {}, {{{0}, parse_direction("+X", 1)}});
  const auto ctx = prepare_routing(t);
  const auto res = generate(ctx, Algorithm::Bfs);
  EXPECT_TRUE(verify_table(ctx, res.table).ok());
  EXPECT_EQ(res.table.get(0, 1)->length(), 3u);
}

TEST(Algorithms, ParseNames) {
  for (Algorithm a : {Algorithm::Bfs, Algorithm::Genetic, Algorithm::Sssp}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("dijkstra"), std::invalid_argument);
}

TEST(Sweep, SamplingIsSeeded) {
  SweepSpec spec;
  spec.dimensions = 3;
  spec.min_size = 2;
  spec.max_size = 5;
  spec.samples = 10;
  spec.seed = 99;
  const auto a = sample_topologies(spec);
  EXPECT_EQ(a, sample_topologies(spec));
  for (const auto& dims : a) {
    ASSERT_EQ(dims.size(), 3u);
    for (int d : dims) {
      EXPECT_GE(d, 2);
      EXPECT_LE(d, 5);
    }
  }
  spec.max_size = 1;
  EXPECT_THROW(sample_topologies(spec), std::invalid_argument);
}

TEST(Sweep, ThreadCountDoesNotChangeRows) {
  SweepSpec spec;
  spec.dimensions = 2;
  spec.min_size = 2;
  spec.max_size = 4;
  spec.samples = 6;
  SweepOptions one;
  one.threads = 1;
  one.stage2_only_calls = true;
  SweepOptions many = one;
  many.threads = 3;
  const auto a = run_sweep(spec, one);
  const auto b = run_sweep(spec, many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].dims, b[i].dims);
    EXPECT_EQ(a[i].stage2_only_calls, b[i].stage2_only_calls);
    ASSERT_EQ(a[i].outcomes.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(a[i].outcomes[k].pi, b[i].outcomes[k].pi);
      EXPECT_TRUE(a[i].outcomes[k].verified);
      EXPECT_TRUE(a[i].outcomes[k].reconciled);
    }
  }
  const std::string csv = sweep_csv(a);
  EXPECT_EQ(csv.rfind("sample,dims,nodes,algo,pi,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 12);
}

TEST(Sweep, CeilingSkips) {
  SweepOptions opts;
  opts.node_ceiling = 8;
  const auto row = run_sweep_topology(0, {3, 3}, opts);
  EXPECT_TRUE(row.skipped);
  opts.force = true;
  EXPECT_FALSE(run_sweep_topology(0, {3, 3}, opts).skipped);
}

}  // namespace
}  // namespace torus_route
