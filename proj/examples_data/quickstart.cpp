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


// Builds SSSP and BFS tables for a topology file and prints their loads.
//
//   quickstart examples_data/desmos.topo

#include <iostream>

#include "torus_route/torus_route.hpp"

int main(int argc, char** argv) {
  using namespace torus_route;
  const Topology t = argc > 1 ? load_topology(argv[1]) : Topology::make_torus({4, 2, 2, 2});
  const RoutingContext ctx = prepare_routing(t);
  std::cout << t.node_count() << " nodes, " << t.channel_count() << " channels, "
            << ctx.added.size() << " relaxed turns\n";
  for (Algorithm algo : {Algorithm::Bfs, Algorithm::Sssp}) {
    const GenerationResult res = generate(ctx, algo);
    const LoadReport rep = load_report(res.table);
    std::cout << to_string(algo) << ": pi=" << rep.pi << " min=" << rep.min_load
              << " sigma4=" << rep.sigma.at(4) << " maxD=" << rep.max_d
              << " verified=" << (verify_table(ctx, res.table).ok() ? "yes" : "no") << '\n';
  }
}
