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


#ifndef TORUS_ROUTE_ALGORITHMS_GENERATION_HPP
#define TORUS_ROUTE_ALGORITHMS_GENERATION_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "torus_route/metrics.hpp"
#include "torus_route/routes.hpp"

namespace torus_route {

struct GenerationStats {
  std::size_t sources = 0;        // BFS: frontier sweeps, one per source
  std::size_t sssp_calls = 0;     // SSSP: build_sssp invocations
  std::size_t unique_pairs = 0;   // SSSP: pairs fixed by the unique-route stage
  std::size_t total_pairs = 0;
  std::size_t generations = 0;    // GA
  std::size_t truncated_pairs = 0;  // GA: pairs whose variant list hit the cap
  std::vector<double> best_fitness;  // GA: best sigma(4) after each generation
};

/// A complete table plus the per-link weight increments the generator
/// applied while building it (they must equal the table's channel loads).
struct GenerationResult {
  RoutingTable table;
  ChannelLoads weights;
  GenerationStats stats;
};

}  // namespace torus_route

#endif  // TORUS_ROUTE_ALGORITHMS_GENERATION_HPP
