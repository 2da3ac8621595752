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


#ifndef TORUS_ROUTE_PIPELINE_HPP
#define TORUS_ROUTE_PIPELINE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "torus_route/algorithms/bfs.hpp"
#include "torus_route/algorithms/genetic.hpp"
#include "torus_route/algorithms/sssp.hpp"
#include "torus_route/cdg.hpp"
#include "torus_route/metrics.hpp"
#include "torus_route/routes.hpp"
#include "torus_route/routing_graph.hpp"

namespace torus_route {

/// Everything a generator needs: the augmented CDG, the relaxed turns it
/// added, and the routing graph with those turns applied.
struct RoutingContext {
  Topology topology;
  ChannelDependencyGraph cdg;
  std::vector<ChannelDependency> added;
  RoutingGraph rg;
  TurnSet relaxed;
};

inline RoutingContext prepare_routing(const Topology& t) {
  AugmentResult aug = augment_cdg(build_cdg(t));
  RoutingGraph rg = apply_augmentation(build_routing_graph(t), aug.added);
  TurnSet relaxed(aug.added);
  return RoutingContext{t, std::move(aug.graph), std::move(aug.added), std::move(rg),
                        std::move(relaxed)};
}

enum class Algorithm { Bfs, Genetic, Sssp };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Bfs: return "bfs";
    case Algorithm::Genetic: return "genetic";
    case Algorithm::Sssp: return "sssp";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "bfs") return Algorithm::Bfs;
  if (name == "genetic") return Algorithm::Genetic;
  if (name == "sssp") return Algorithm::Sssp;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

inline GenerationResult generate(const RoutingContext& ctx, Algorithm algo,
                                 const GeneticParams& genetic = {}, SsspOptions sssp = {}) {
  switch (algo) {
    case Algorithm::Bfs: return build_rt_bfs(ctx.rg);
    case Algorithm::Genetic: return build_rt_genetic(ctx.rg, genetic);
    case Algorithm::Sssp: return build_rt_sssp(ctx.rg, sssp);
  }
  throw std::invalid_argument("unknown algorithm");
}

struct RouteProblem {
  NodeId src;
  NodeId dst;
  std::string message;
};

struct VerificationReport {
  std::vector<std::pair<NodeId, NodeId>> missing;
  std::vector<RouteProblem> invalid;
  std::vector<RouteProblem> non_minimal;
  DeadlockCheck deadlock;

  bool complete() const { return missing.empty(); }
  bool valid() const { return invalid.empty(); }
  bool minimal() const { return non_minimal.empty(); }
  bool deadlock_free() const { return deadlock.deadlock_free; }
  bool ok() const { return complete() && valid() && minimal() && deadlock_free(); }
};

/// Channel dependencies actually used by the table's routes.
inline ChannelDependencyGraph table_dependencies(const RoutingTable& table) {
  const Topology& t = table.topology();
  auto g = ChannelDependencyGraph::empty(t);
  for (const Route& r : table.routes()) {
    const auto channels = route_channels(t, r);
    if (channels.size() != r.length()) continue;  // dead link, reported as invalid
    for (std::size_t i = 1; i < channels.size(); ++i) g.add_edge(channels[i - 1], channels[i]);
  }
  return g;
}

/// Completeness, rule validity, minimality against the rule-minimal
/// length (and the torus distance when fault-free) and deadlock freedom
/// of the used dependencies.
inline VerificationReport verify_table(const RoutingContext& ctx, const RoutingTable& table) {
  const Topology& t = ctx.topology;
  VerificationReport rep;
  rep.missing = table.missing_pairs();
  for (NodeId s : t.live_nodes()) {
    std::vector<PairSummary> summary;
    for (NodeId d : t.live_nodes()) {
      const auto& r = table.get(s, d);
      if (!r) continue;
      if (auto violation = validate_route(t, *r, ctx.relaxed)) {
        rep.invalid.push_back({s, d, to_string(violation->kind) + std::string(": ") + violation->message});
        continue;
      }
      if (summary.empty()) summary = summarize_routes_from(ctx.rg, s);
      const int len = static_cast<int>(r->length());
      if (len != summary[d].length) {
        rep.non_minimal.push_back({s, d, "length " + std::to_string(len) + ", rule-minimal " +
                                             std::to_string(summary[d].length)});
      } else if (!t.has_faults() && len != t.distance(s, d)) {
        rep.non_minimal.push_back({s, d, "length " + std::to_string(len) + ", distance " +
                                             std::to_string(t.distance(s, d))});
      }
    }
  }
  rep.deadlock = assert_deadlock_free(table_dependencies(table));
  return rep;
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_PIPELINE_HPP
