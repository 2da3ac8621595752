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


#ifndef TORUS_ROUTE_TORUS_ROUTE_HPP
#define TORUS_ROUTE_TORUS_ROUTE_HPP

#include "torus_route/algorithms/bfs.hpp"
#include "torus_route/algorithms/genetic.hpp"
#include "torus_route/algorithms/route_search.hpp"
#include "torus_route/algorithms/sssp.hpp"
#include "torus_route/cdg.hpp"
#include "torus_route/metrics.hpp"
#include "torus_route/oracle.hpp"
#include "torus_route/pipeline.hpp"
#include "torus_route/routes.hpp"
#include "torus_route/routing_graph.hpp"
#include "torus_route/sweep.hpp"
#include "torus_route/topology.hpp"
#include "torus_route/topology_io.hpp"

#endif  // TORUS_ROUTE_TORUS_ROUTE_HPP
