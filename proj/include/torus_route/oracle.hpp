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


#ifndef TORUS_ROUTE_ORACLE_HPP
#define TORUS_ROUTE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "torus_route/algorithms/route_search.hpp"
#include "torus_route/routes.hpp"
#include "torus_route/routing_graph.hpp"
#include "torus_route/topology.hpp"

namespace torus_route {

/// Which rules the brute-force enumerator applies.
struct RuleConfig {
  bool allow_fs = true;
  bool allow_ls = true;
  TurnSet relaxed_turns;
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using DirectionSequence = std::vector<int>;  // direction indices

namespace detail {

// Walks direction sequences of the shape [FS] body [LS] straight on the
// topology. Runs of one direction are capped at d_j steps: a longer run
// revisits its start and can be shortened without changing legality.
class OracleWalker {
 public:
  OracleWalker(const Topology& t, NodeId src, const RuleConfig& rules, int max_len,
               std::uint64_t budget)
      : t_(t), src_(src), rules_(rules), max_len_(max_len), budget_(budget),
        signs_(t.dimensions(), 0) {}

  template <class Visit>
  void run(Visit&& visit) {
    visit_ = [&](NodeId at, const DirectionSequence& seq) { visit(at, seq); };
    // Phase 0: nothing taken yet.
    for (int d = 0; d < t_.direction_count(); ++d) {
      const Direction dir(d, t_.dimensions());
      const auto v = hop(src_, dir);
      if (!v) continue;
      if (rules_.allow_fs && dir.is_positive()) {
        seq_.push_back(d);
        after_first_step(*v, dir);
        seq_.pop_back();
      }
      take_body(src_, *v, dir, 1);
    }
  }

 private:
  std::optional<NodeId> hop(NodeId u, Direction d) {
    if (++expanded_ > budget_) throw SearchBudgetExceeded("oracle search budget exceeded");
    return t_.neighbor(u, d);
  }

  void after_first_step(NodeId at, Direction fs) {
    if (static_cast<int>(seq_.size()) >= max_len_) return;
    const ChannelId fs_channel = t_.channel_id(src_, fs);
    for (int d = 0; d < t_.direction_count(); ++d) {
      const Direction dir(d, t_.dimensions());
      if (dir == fs) continue;
      if (dir < fs && !rules_.relaxed_turns.contains(fs_channel, t_.channel_id(at, dir))) continue;
      const auto v = hop(at, dir);
      if (!v) continue;
      take_body(at, *v, dir, 1);
    }
  }

  // Appends body step `dir` from `from` (arriving at `to`) and explores on.
  void take_body(NodeId from, NodeId to, Direction dir, int run) {
    const int dim = dir.dimension();
    const int previous = signs_[dim];
    if (previous == -dir.sign()) return;
    signs_[dim] = dir.sign();
    seq_.push_back(dir.index());
    visit_(to, seq_);
    if (static_cast<int>(seq_.size()) < max_len_) {
      for (int d = dir.index(); d < t_.direction_count(); ++d) {
        const Direction next(d, t_.dimensions());
        if (signs_[next.dimension()] == -next.sign()) continue;
        const int next_run = next == dir ? run + 1 : 1;
        if (next_run > t_.dims()[next.dimension()]) continue;
        const auto v = hop(to, next);
        if (!v) continue;
        take_body(to, *v, next, next_run);
      }
      if (rules_.allow_ls) last_steps(from, to, dir);
    }
    seq_.pop_back();
    signs_[dim] = previous;
  }

  void last_steps(NodeId prev, NodeId at, Direction last) {
    const ChannelId last_channel = t_.channel_id(prev, last);
    for (int d = t_.dimensions(); d < t_.direction_count(); ++d) {
      const Direction dir(d, t_.dimensions());
      if (signs_[dir.dimension()] == -dir.sign()) continue;
      if (dir == last) continue;  // same as another body step
      if (dir < last && !rules_.relaxed_turns.contains(last_channel, t_.channel_id(at, dir))) continue;
      const auto v = hop(at, dir);
      if (!v) continue;
      seq_.push_back(d);
      visit_(*v, seq_);
      seq_.pop_back();
    }
  }

  const Topology& t_;
  NodeId src_;
  const RuleConfig& rules_;
  int max_len_;
  std::uint64_t budget_;
  std::uint64_t expanded_ = 0;
  std::vector<int> signs_;
  DirectionSequence seq_;
  std::function<void(NodeId, const DirectionSequence&)> visit_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

/// Every rule-compliant direction sequence src -> dst of at most max_len
/// hops, as a set.
inline std::set<DirectionSequence> brute_force_routes(const Topology& t, NodeId src, NodeId dst,
                                                      const RuleConfig& rules, int max_len,
                                                      std::uint64_t budget = kDefaultOracleBudget) {
  std::set<DirectionSequence> out;
  if (!t.is_live(src) || !t.is_live(dst) || src == dst) return out;
  detail::OracleWalker walker(t, src, rules, max_len, budget);
  walker.run([&](NodeId at, const DirectionSequence& seq) {
    if (at == dst) out.insert(seq);
  });
  return out;
}

/// Per destination: shortest legal length and the distinct sequences of
/// that length, from one exhaustive walk.
struct OracleSummary {
  int length = kUnreachable;
  std::set<DirectionSequence> minimal;
};

inline std::vector<OracleSummary> oracle_summaries_from(const Topology& t, NodeId src,
                                                        const RuleConfig& rules, int max_len,
                                                        std::uint64_t budget = kDefaultOracleBudget) {
  std::vector<OracleSummary> out(t.node_slots());
  if (!t.is_live(src)) return out;
  detail::OracleWalker walker(t, src, rules, max_len, budget);
  walker.run([&](NodeId at, const DirectionSequence& seq) {
    if (at == src) return;
    OracleSummary& s = out[at];
    const int len = static_cast<int>(seq.size());
    if (len > s.length) return;
    if (len < s.length) {
      s.length = len;
      s.minimal.clear();
    }
    s.minimal.insert(seq);
  });
  return out;
}

struct OracleMismatch {
  NodeId src;
  NodeId dst;
  std::string field;  // "existence", "length" or "count"
  std::int64_t oracle;
  std::int64_t graph;
};

struct EquivalenceReport {
  std::size_t pairs = 0;
  std::vector<OracleMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Compares route existence, minimal length and minimal route count for
/// every ordered pair between the oracle and the routing graph.
inline EquivalenceReport oracle_equivalence(const Topology& t, const RuleConfig& rules,
                                            const RoutingGraph& rg) {
  if (t.node_count() > 64) throw std::invalid_argument("oracle_equivalence is limited to 64 nodes");
  EquivalenceReport rep;
  int max_len = 2;
  for (int d : t.dims()) max_len += d;
  for (NodeId s : t.live_nodes()) {
    const auto oracle = oracle_summaries_from(t, s, rules, max_len);
    const auto graph = summarize_routes_from(rg, s);
    for (NodeId d : t.live_nodes()) {
      if (d == s) continue;
      ++rep.pairs;
      const OracleSummary& o = oracle[d];
      const PairSummary& g = graph[d];
      const bool oe = o.length != kUnreachable, ge = g.length != kUnreachable;
      if (oe != ge) {
        rep.mismatches.push_back({s, d, "existence", oe, ge});
        continue;
      }
      if (!oe) continue;
      if (o.length != g.length) {
        rep.mismatches.push_back({s, d, "length", o.length, g.length});
      } else if (o.minimal.size() != g.routes) {
        rep.mismatches.push_back({s, d, "count", static_cast<std::int64_t>(o.minimal.size()),
                                  static_cast<std::int64_t>(g.routes)});
      }
    }
  }
  return rep;
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ORACLE_HPP
