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


#ifndef TORUS_ROUTE_SWEEP_HPP
#define TORUS_ROUTE_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "torus_route/pipeline.hpp"

namespace torus_route {

struct SweepSpec {
  int dimensions = 2;
  int min_size = 2;
  int max_size = 8;
  std::size_t samples = 20;
  std::uint64_t seed = 1;

  void validate() const {
    if (dimensions < 1 || dimensions > 4) throw std::invalid_argument("sweep dimension count must be 1..4");
    if (min_size < 2 || max_size < min_size) throw std::invalid_argument("sweep size range must satisfy 2 <= min <= max");
    if (samples < 1) throw std::invalid_argument("sweep needs at least one sample");
  }
};

struct SweepOptions {
  std::vector<Algorithm> algorithms{Algorithm::Bfs, Algorithm::Sssp};
  GeneticParams genetic;
  bool verify = true;             // run verify_table on every table
  bool stage2_only_calls = false;  // also count build_sssp calls without the unique stage
  std::size_t node_ceiling = 512;
  bool force = false;
  std::size_t threads = 0;  // 0: TORUS_ROUTE_THREADS or hardware concurrency
};

struct AlgorithmOutcome {
  Algorithm algorithm;
  std::uint64_t pi = 0;
  double sigma4 = 0.0;
  std::size_t max_d = 0;
  double seconds = 0.0;
  GenerationStats stats;
  bool verified = false;
  bool reconciled = false;  // generator weights == channel loads
};

struct SweepRow {
  std::size_t sample = 0;
  std::vector<int> dims;
  std::size_t nodes = 0;
  std::size_t relaxed_turns = 0;
  bool cdg_deadlock_free = false;
  std::size_t stage2_only_calls = 0;
  std::vector<AlgorithmOutcome> outcomes;
  bool skipped = false;
  std::string error;

  const AlgorithmOutcome* find(Algorithm a) const {
    for (const auto& o : outcomes) {
      if (o.algorithm == a) return &o;
    }
    return nullptr;
  }
};

/// Uniform random dims in [min_size, max_size], one vector per sample.
inline std::vector<std::vector<int>> sample_topologies(const SweepSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(spec.max_size - spec.min_size + 1);
  std::vector<std::vector<int>> out(spec.samples, std::vector<int>(spec.dimensions));
  for (auto& dims : out) {
    for (int& d : dims) {
      d = spec.min_size + static_cast<int>((static_cast<unsigned __int128>(rng()) * span) >> 64);
    }
  }
  return out;
}

inline std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("TORUS_ROUTE_THREADS")) n = std::strtoul(env, nullptr, 10);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, jobs));
}

inline SweepRow run_sweep_topology(std::size_t sample, const std::vector<int>& dims,
                                   const SweepOptions& options) {
  SweepRow row;
  row.sample = sample;
  row.dims = dims;
  try {
    const Topology t = Topology::make_torus(dims);
    row.nodes = t.node_count();
    if (row.nodes > options.node_ceiling && !options.force) {
      row.skipped = true;
      row.error = "node count above ceiling";
      return row;
    }
    const RoutingContext ctx = prepare_routing(t);
    row.relaxed_turns = ctx.added.size();
    row.cdg_deadlock_free = assert_deadlock_free(ctx.cdg).deadlock_free;
    for (Algorithm a : options.algorithms) {
      const auto start = std::chrono::steady_clock::now();
      GenerationResult res = generate(ctx, a, options.genetic);
      AlgorithmOutcome o;
      o.algorithm = a;
      o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const LoadReport rep = load_report(res.table);
      o.pi = rep.pi;
      o.sigma4 = rep.sigma.at(4);
      o.max_d = rep.max_d;
      o.stats = std::move(res.stats);
      o.reconciled = res.weights == rep.per_channel;
      o.verified = !options.verify || verify_table(ctx, res.table).ok();
      row.outcomes.push_back(std::move(o));
    }
    if (options.stage2_only_calls) {
      row.stage2_only_calls = build_rt_sssp(ctx.rg, SsspOptions{false}).stats.sssp_calls;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

/// Runs every sampled topology; rows come back in sample order whatever
/// the thread count.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  const auto topologies = sample_topologies(spec);
  std::vector<SweepRow> rows(topologies.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < topologies.size(); i = next++) {
      rows[i] = run_sweep_topology(i, topologies[i], options);
    }
  };
  const std::size_t workers = worker_count(options.threads, topologies.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

inline std::string format_dims(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
  return s;
}

/// One line per (topology, algorithm). pi_ratio is pi / pi(bfs) when a
/// BFS run is present in the same row.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "sample,dims,nodes,algo,pi,pi_ratio,sigma4,max_d,unique_fraction,sssp_calls,"
         "stage2_only_calls,verified,wall_time_s,status\n";
  for (const SweepRow& r : rows) {
    const std::string head = std::to_string(r.sample) + ',' + format_dims(r.dims) + ',' +
                             std::to_string(r.nodes) + ',';
    if (r.skipped || !r.error.empty()) {
      out << head << ",,,,,,,,,,," << (r.skipped ? "skipped" : "error") << '\n';
      continue;
    }
    const AlgorithmOutcome* bfs = r.find(Algorithm::Bfs);
    for (const AlgorithmOutcome& o : r.outcomes) {
      out << head << to_string(o.algorithm) << ',' << o.pi << ',';
      if (bfs && bfs->pi > 0) out << static_cast<double>(o.pi) / static_cast<double>(bfs->pi);
      out << ',' << o.sigma4 << ',' << o.max_d << ',';
      if (o.algorithm == Algorithm::Sssp && o.stats.total_pairs > 0) {
        out << static_cast<double>(o.stats.unique_pairs) / static_cast<double>(o.stats.total_pairs);
      }
      out << ',';
      if (o.algorithm == Algorithm::Sssp) out << o.stats.sssp_calls;
      out << ',';
      if (o.algorithm == Algorithm::Sssp && r.stage2_only_calls) out << r.stage2_only_calls;
      out << ',' << (o.verified ? 1 : 0) << ',' << o.seconds << ",ok\n";
    }
  }
  return out.str();
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_SWEEP_HPP
