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

#include <random>

#include "torus_route/oracle.hpp"
#include "torus_route/pipeline.hpp"
#include "torus_route/sweep.hpp"

namespace torus_route {
namespace {

std::vector<std::vector<int>> small_tori() {
  std::vector<std::vector<int>> out;
  const int sizes[] = {2, 3, 4};
  for (int a : sizes) {
    out.push_back({a});
    for (int b : sizes) {
      out.push_back({a, b});
      for (int c : sizes) out.push_back({a, b, c});
    }
  }
  return out;
}

RuleConfig rules_for(const RoutingContext& ctx) {
  RuleConfig rules;
  rules.relaxed_turns = ctx.relaxed;
  return rules;
}

DirectionSequence seq(std::initializer_list<const char*> names, int n) {
  DirectionSequence out;
  for (const char* name : names) out.push_back(parse_direction(name, n).index());
  return out;
}

TEST(BruteForce, Examples) {
  const auto t = Topology::make_torus({3, 3});
  const auto found = brute_force_routes(t, t.id({0, 0}), t.id({1, 1}), RuleConfig{}, 2);
  EXPECT_EQ(found, (std::set<DirectionSequence>{seq({"+X", "+Y"}, 2)}));

  const auto ring = Topology::make_torus({4});
  EXPECT_EQ(brute_force_routes(ring, 0, 2, RuleConfig{}, 2),
            (std::set<DirectionSequence>{seq({"+X", "+X"}, 1), seq({"-X", "-X"}, 1)}));
  EXPECT_TRUE(brute_force_routes(ring, 0, 0, RuleConfig{}, 4).empty());
}

TEST(BruteForce, FirstStepOnlyWithRelaxedTurn) {
  // +Y then +X needs a registered relaxation.
  const auto t = Topology::make_torus({3, 3});
  const NodeId a = t.id({1, 0}), b = t.id({1, 1}), c = t.id({2, 1});
  EXPECT_EQ(brute_force_routes(t, a, c, RuleConfig{}, 2).size(), 1u);
  RuleConfig rules;
  const std::vector<ChannelDependency> turn{
      {t.channel_id(a, parse_direction("+Y", 2)), t.channel_id(b, parse_direction("+X", 2))}};
  rules.relaxed_turns = TurnSet(turn);
  EXPECT_EQ(brute_force_routes(t, a, c, rules, 2).size(), 2u);
  rules.allow_fs = false;
  EXPECT_EQ(brute_force_routes(t, a, c, rules, 2).size(), 1u);
}

TEST(BruteForce, Budget) {
  const auto t = Topology::make_torus({4, 4, 4});
  EXPECT_THROW(brute_force_routes(t, 0, t.id({2, 2, 2}), RuleConfig{}, 14, 100), SearchBudgetExceeded);
}

TEST(Equivalence, AllSmallTori) {
  std::size_t pairs = 0;
  for (const auto& dims : small_tori()) {
    const auto t = Topology::make_torus(dims);
    const auto plain = oracle_equivalence(t, RuleConfig{}, build_routing_graph(t));
    EXPECT_TRUE(plain.ok()) << format_dims(dims);
    const auto ctx = prepare_routing(t);
    const auto aug = oracle_equivalence(t, rules_for(ctx), ctx.rg);
    EXPECT_TRUE(aug.ok()) << format_dims(dims);
    pairs += aug.pairs;
  }
  EXPECT_GT(pairs, 0u);
}

TEST(Equivalence, RandomSingleFaults) {
  std::mt19937_64 rng(2026);
  const std::vector<std::vector<int>> bases{{4, 4}, {3, 3, 3}, {4, 3}, {2, 4, 3}, {5, 5}};
  for (int i = 0; i < 30; ++i) {
    const auto& dims = bases[rng() % bases.size()];
    const auto full = Topology::make_torus(dims);
    const NodeId u = static_cast<NodeId>(rng() % full.node_count());
    Topology t;
    if (rng() % 2 == 0) {
      t = Topology::make_torus(dims, {full.coords(u)});
    } else {
      Direction d = full.direction(static_cast<int>(rng() % full.direction_count()));
      if (!full.neighbor(u, d)) d = d.opposite();
      t = Topology::make_torus(dims, {}, {{full.coords(u), d}});
    }
    const auto ctx = prepare_routing(t);
    const auto rep = oracle_equivalence(t, rules_for(ctx), ctx.rg);
    EXPECT_TRUE(rep.ok()) << format_dims(dims) << " sample " << i;
  }
}

TEST(Equivalence, RejectsLargeTopologies) {
  const auto t = Topology::make_torus({5, 5, 3});
  EXPECT_THROW(oracle_equivalence(t, RuleConfig{}, build_routing_graph(t)), std::invalid_argument);
}

std::vector<Topology> mutation_probes() {
  std::vector<Topology> out;
  for (const std::vector<int>& dims : {std::vector<int>{3, 3}, {2, 2}, {4, 2, 2}, {2, 2, 2}, {4, 2}}) {
    out.push_back(Topology::make_torus(dims));
  }
  // A cut +Y link makes FS +X, +Y, -X a minimal detour.
  out.push_back(Topology::make_torus({4, 4}, {}, {{{0, 0}, parse_direction("+Y", 2)}}));
  return out;
}

std::size_t mutation_mismatches(bool RuleFamilies::*family) {
  RuleFamilies rules;
  rules.*family = false;
  std::size_t mismatches = 0;
  for (const auto& t : mutation_probes()) {
    const auto ctx = prepare_routing(t);
    const auto broken = apply_augmentation(build_routing_graph(t, rules), ctx.added);
    mismatches += oracle_equivalence(t, rules_for(ctx), broken).mismatches.size();
  }
  return mismatches;
}

TEST(Equivalence, DetectsMissingEdgeFamilies) {
  EXPECT_GT(mutation_mismatches(&RuleFamilies::begin_first_step), 0u);
  EXPECT_GT(mutation_mismatches(&RuleFamilies::begin_dirbit), 0u);
  EXPECT_GT(mutation_mismatches(&RuleFamilies::first_step_dirbit), 0u);
  EXPECT_GT(mutation_mismatches(&RuleFamilies::dirbit_dirbit), 0u);
  EXPECT_GT(mutation_mismatches(&RuleFamilies::to_end), 0u);
}

TEST(Equivalence, PlainLastStepEdgesDuplicateBodySteps) {
  // Without a relaxed turn an LS hop is also a legal final body step, so
  // dropping those edges leaves every route sequence in place.
  EXPECT_EQ(mutation_mismatches(&RuleFamilies::dirbit_last_step), 0u);
}

TEST(Equivalence, DetectsDroppedRelaxation) {
  const auto t = Topology::make_torus({2, 2});
  const auto ctx = prepare_routing(t);
  ASSERT_FALSE(ctx.added.empty());
  const auto rep = oracle_equivalence(t, rules_for(ctx), build_routing_graph(t));
  EXPECT_FALSE(rep.ok());
}

}  // namespace
}  // namespace torus_route
