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


#ifndef TORUS_ROUTE_ALGORITHMS_GENETIC_HPP
#define TORUS_ROUTE_ALGORITHMS_GENETIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torus_route/algorithms/generation.hpp"
#include "torus_route/algorithms/route_search.hpp"
#include "torus_route/metrics.hpp"

namespace torus_route {

struct GeneticParams {
  std::size_t population = 100;
  double mutation = 0.02;
  std::size_t stagnation_limit = 30;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  std::size_t max_generations = 2000;
  std::size_t variant_cap = 64;

  void validate() const {
    if (population < 2) throw std::invalid_argument("population must be at least 2");
    if (!(mutation >= 0.0 && mutation <= 1.0)) throw std::invalid_argument("mutation must be in [0,1]");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    if (variant_cap == 0) throw std::invalid_argument("variant cap must be positive");
  }
};

namespace detail {

// Uniform draw in [0, n) without modulo bias worth caring about; portable
// across standard libraries, unlike std::uniform_int_distribution.
inline std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Chromosome {
  std::vector<std::uint16_t> genes;
  double fitness = 0.0;
};

}  // namespace detail

inline GenerationResult build_rt_genetic(const RoutingGraph& rg, std::span<const NodeId> nodes,
                                         const GeneticParams& params = {}) {
  params.validate();
  const Topology& t = rg.topology();
  GenerationResult out{RoutingTable(t), ChannelLoads(t.channel_slots(), 0), {}};

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId s : nodes) {
    for (NodeId d : nodes) {
      if (s != d) pairs.push_back({s, d});
    }
  }
  out.stats.total_pairs = pairs.size();
  if (pairs.empty()) return out;

  // Variants per pair and the channels each one uses.
  const ReverseRoutingGraph reverse(rg);
  std::vector<std::vector<Route>> variants(pairs.size());
  std::vector<std::vector<std::vector<ChannelId>>> channels(pairs.size());
  std::vector<std::pair<NodeId, NodeId>> unroutable;
  {
    std::vector<std::vector<int>> to_end(t.node_slots());
    for (NodeId d : nodes) to_end[d] = reverse.distances_to_end(d);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [s, d] = pairs[i];
      if (to_end[d][rg.begin(s)] == kUnreachable) {
        unroutable.push_back(pairs[i]);
        continue;
      }
      RouteVariants v = enumerate_minimal_routes(rg, s, d, params.variant_cap, to_end[d]);
      if (v.truncated) ++out.stats.truncated_pairs;
      for (const Route& r : v.routes) channels[i].push_back(route_channels(t, r));
      variants[i] = std::move(v.routes);
    }
  }
  if (!unroutable.empty()) throw UnroutableError(t, std::move(unroutable));

  const double gamma = perfect_channel_load(t);
  const auto live = t.live_channels();
  std::vector<std::uint32_t> scratch(t.channel_slots(), 0);
  auto evaluate = [&](detail::Chromosome& c) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (ChannelId ch : channels[i][c.genes[i]]) ++scratch[ch];
    }
    double acc = 0.0;
    for (ChannelId ch : live) {
      const double diff = gamma - static_cast<double>(scratch[ch]);
      acc += diff * diff * diff * diff;
    }
    c.fitness = std::pow(acc / static_cast<double>(live.size()), 0.25);
  };

  std::mt19937_64 rng(params.seed);
  const std::size_t genes = pairs.size();
  std::vector<detail::Chromosome> population(params.population);
  for (auto& c : population) {
    c.genes.resize(genes);
    for (std::size_t i = 0; i < genes; ++i) {
      c.genes[i] = static_cast<std::uint16_t>(detail::draw_below(rng, variants[i].size()));
    }
    evaluate(c);
  }
  auto by_fitness = [](const detail::Chromosome& a, const detail::Chromosome& b) {
    return a.fitness < b.fitness;
  };
  std::stable_sort(population.begin(), population.end(), by_fitness);
  out.stats.best_fitness.push_back(population.front().fitness);

  const bool degenerate =
      std::ranges::all_of(variants, [](const auto& v) { return v.size() == 1; });
  double reference = population.front().fitness;
  std::size_t stagnant = 0;
  while (!degenerate && reference > 0.0 && stagnant < params.stagnation_limit &&
         out.stats.generations < params.max_generations) {
    std::vector<detail::Chromosome> children;
    children.reserve(params.population);
    while (children.size() < params.population) {
      const auto& a = population[detail::draw_below(rng, population.size())];
      const auto& b = population[detail::draw_below(rng, population.size())];
      std::size_t lo = detail::draw_below(rng, genes + 1);
      std::size_t hi = detail::draw_below(rng, genes + 1);
      if (lo > hi) std::swap(lo, hi);
      detail::Chromosome x = a, y = b;
      std::swap_ranges(x.genes.begin() + lo, x.genes.begin() + hi, y.genes.begin() + lo);
      for (auto* child : {&x, &y}) {
        for (std::size_t i = 0; i < genes; ++i) {
          if (detail::draw_unit(rng) < params.mutation) {
            child->genes[i] = static_cast<std::uint16_t>(detail::draw_below(rng, variants[i].size()));
          }
        }
        evaluate(*child);
        if (children.size() < params.population) children.push_back(std::move(*child));
      }
    }
    population.insert(population.end(), std::make_move_iterator(children.begin()),
                      std::make_move_iterator(children.end()));
    std::stable_sort(population.begin(), population.end(), by_fitness);
    population.resize(params.population);
    ++out.stats.generations;
    const double best = population.front().fitness;
    out.stats.best_fitness.push_back(best);
    if (best < reference * (1.0 - params.epsilon)) {
      reference = best;
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }

  const detail::Chromosome& best = population.front();
  for (std::size_t i = 0; i < genes; ++i) {
    for (ChannelId ch : channels[i][best.genes[i]]) ++out.weights[ch];
    out.table.set(variants[i][best.genes[i]]);
  }
  return out;
}

inline GenerationResult build_rt_genetic(const RoutingGraph& rg, const GeneticParams& params = {}) {
  const auto nodes = rg.topology().live_nodes();
  return build_rt_genetic(rg, nodes, params);
}

}  // namespace torus_route

#endif  // TORUS_ROUTE_ALGORITHMS_GENETIC_HPP
