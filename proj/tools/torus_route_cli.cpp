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


// torus-route: generate, verify, compare and sweep routing tables.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torus_route/torus_route.hpp"

namespace {

using namespace torus_route;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kIoError = 2, kUnroutable = 3 };

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

void check_ceiling(const Topology& t, std::size_t ceiling, bool force) {
  if (t.node_count() > ceiling && !force) {
    throw ParseError(std::to_string(t.node_count()) + " nodes exceeds the ceiling of " +
                     std::to_string(ceiling) + "; pass --force to run anyway");
  }
}

struct GenerateArgs {
  std::string topology;
  std::string algo = "sssp";
  std::uint64_t seed = 1;
  std::string out;
  std::string report;
  bool per_channel = false;
  std::size_t ceiling = 512;
  bool force = false;
};

int cmd_generate(const GenerateArgs& a) {
  const Topology t = load_topology(a.topology);
  check_ceiling(t, a.ceiling, a.force);
  const RoutingContext ctx = prepare_routing(t);
  GeneticParams gp;
  gp.seed = a.seed;
  const auto result = generate(ctx, parse_algorithm(a.algo), gp);
  const LoadReport rep = load_report(result.table);
  nlohmann::json j = to_json(t, rep, a.per_channel);
  j["algorithm"] = a.algo;
  j["routes"] = result.table.size();
  j["relaxed_turns"] = ctx.added.size();
  if (parse_algorithm(a.algo) == Algorithm::Sssp) {
    j["sssp_calls"] = result.stats.sssp_calls;
    j["unique_pairs"] = result.stats.unique_pairs;
  }
  if (parse_algorithm(a.algo) == Algorithm::Genetic) {
    j["generations"] = result.stats.generations;
    j["seed"] = a.seed;
  }
  const std::string table = write_table(result.table);
  const std::string report = j.dump(2) + "\n";
  if (a.out.empty() || a.out == "-") {
    std::cout << table;
    if (!a.report.empty()) write_file(a.report, report);
    else std::cerr << report;
  } else {
    write_file(a.out, table);
    write_file(a.report.empty() ? "-" : a.report, report);
  }
  return kOk;
}

int cmd_verify(const std::string& topo_path, const std::string& table_path) {
  const Topology t = load_topology(topo_path);
  const RoutingTable table = load_table(t, table_path);
  const RoutingContext ctx = prepare_routing(t);
  const VerificationReport rep = verify_table(ctx, table);
  auto line = [](const char* name, bool ok, std::size_t failures) {
    std::cout << name << ": " << (ok ? "pass" : "FAIL");
    if (!ok && failures) std::cout << " (" << failures << ")";
    std::cout << '\n';
  };
  line("completeness", rep.complete(), rep.missing.size());
  for (const auto& [s, d] : rep.missing) std::cerr << "missing " << t.format(s) << " -> " << t.format(d) << '\n';
  line("validity", rep.valid(), rep.invalid.size());
  for (const auto& p : rep.invalid) {
    std::cerr << "invalid " << t.format(p.src) << " -> " << t.format(p.dst) << ": " << p.message << '\n';
  }
  line("minimality", rep.minimal(), rep.non_minimal.size());
  for (const auto& p : rep.non_minimal) {
    std::cerr << "non-minimal " << t.format(p.src) << " -> " << t.format(p.dst) << ": " << p.message << '\n';
  }
  line("deadlock", rep.deadlock_free(), 0);
  if (!rep.deadlock_free()) std::cerr << "cycle: " << format_channels(t, rep.deadlock.cycle) << '\n';
  return rep.ok() ? kOk : kVerifyFailed;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct CompareArgs {
  std::string topology;
  std::string algos = "bfs,genetic,sssp";
  std::string patterns = "alltoall";
  std::size_t runs = 1;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::size_t ceiling = 512;
  bool force = false;
};

int cmd_compare(const CompareArgs& a) {
  const Topology t = load_topology(a.topology);
  check_ceiling(t, a.ceiling, a.force);
  std::vector<Algorithm> algos;
  for (const auto& s : split_list(a.algos)) algos.push_back(parse_algorithm(s));
  std::vector<TrafficPattern> patterns;
  for (const auto& s : split_list(a.patterns)) patterns.push_back(parse_pattern(s));
  const RoutingContext ctx = prepare_routing(t);
  std::ostringstream csv;
  csv << "algo,pattern,pi,sigma4,gamma_perfect,max_d,wall_time_s\n";
  for (Algorithm algo : algos) {
    GeneticParams gp;
    gp.seed = a.seed;
    double best = 0.0;
    GenerationResult result;
    for (std::size_t run = 0; run < std::max<std::size_t>(1, a.runs); ++run) {
      const auto start = std::chrono::steady_clock::now();
      result = generate(ctx, algo, gp);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      best = run == 0 ? s : std::min(best, s);
    }
    for (TrafficPattern p : patterns) {
      const LoadReport rep = pattern_loads(result.table, p);
      csv << to_string(algo) << ',' << to_string(p) << ',' << rep.pi << ',' << rep.sigma.at(4) << ','
          << rep.gamma_perfect << ',' << rep.max_d << ',' << best << '\n';
    }
  }
  write_file(a.out, csv.str());
  return kOk;
}

struct SweepArgs {
  SweepSpec spec;
  std::string algos = "bfs,sssp";
  std::string out = "-";
  std::size_t ceiling = 512;
  bool force = false;
  bool no_verify = false;
};

int cmd_sweep(const SweepArgs& a) {
  SweepOptions options;
  options.algorithms.clear();
  for (const auto& s : split_list(a.algos)) options.algorithms.push_back(parse_algorithm(s));
  options.genetic.seed = a.spec.seed;
  options.node_ceiling = a.ceiling;
  options.force = a.force;
  options.verify = !a.no_verify;
  options.stage2_only_calls = true;
  const auto rows = run_sweep(a.spec, options);
  for (const auto& r : rows) {
    if (r.skipped) std::cerr << "skipped " << format_dims(r.dims) << ": " << r.error << '\n';
    else if (!r.error.empty()) std::cerr << "failed " << format_dims(r.dims) << ": " << r.error << '\n';
  }
  write_file(a.out, sweep_csv(rows));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deadlock-free routing tables for torus interconnects"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Build a routing table and a load report");
  g->add_option("topology", gen.topology, "Topology file")->required();
  g->add_option("--algo", gen.algo, "bfs, genetic or sssp")
      ->check(CLI::IsMember({"bfs", "genetic", "sssp"}));
  g->add_option("--seed", gen.seed, "Genetic algorithm seed");
  g->add_option("--out", gen.out, "Table file (default: stdout)");
  g->add_option("--report", gen.report, "JSON report file");
  g->add_flag("--per-channel", gen.per_channel, "Include per-channel loads in the report");
  g->add_option("--ceiling", gen.ceiling, "Node count that requires --force");
  g->add_flag("--force", gen.force, "Run above the node ceiling");

  std::string verify_topo, verify_table_path;
  auto* v = app.add_subcommand("verify", "Check completeness, minimality, rules and deadlock freedom");
  v->add_option("topology", verify_topo, "Topology file")->required();
  v->add_option("table", verify_table_path, "Routing table file")->required();

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Pattern loads per algorithm as CSV");
  c->add_option("topology", cmp.topology, "Topology file")->required();
  c->add_option("--algos", cmp.algos, "Comma-separated algorithms");
  c->add_option("--patterns", cmp.patterns, "transpose, neighbor, tornado, alltoall");
  c->add_option("--runs", cmp.runs, "Timing repetitions (best time reported)");
  c->add_option("--seed", cmp.seed, "Genetic algorithm seed");
  c->add_option("--out", cmp.out, "CSV file (default: stdout)");
  c->add_option("--ceiling", cmp.ceiling, "Node count that requires --force");
  c->add_flag("--force", cmp.force, "Run above the node ceiling");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Random topology sweep as CSV");
  s->add_option("--dimensions,-n", sw.spec.dimensions, "Dimension count (1..4)");
  s->add_option("--min-size", sw.spec.min_size, "Smallest dimension size");
  s->add_option("--max-size", sw.spec.max_size, "Largest dimension size");
  s->add_option("--samples", sw.spec.samples, "Number of topologies");
  s->add_option("--seed", sw.spec.seed, "Sampling and genetic seed");
  s->add_option("--algos", sw.algos, "Comma-separated algorithms");
  s->add_option("--out", sw.out, "CSV file (default: stdout)");
  s->add_option("--ceiling", sw.ceiling, "Node count that requires --force");
  s->add_flag("--force", sw.force, "Run topologies above the node ceiling");
  s->add_flag("--no-verify", sw.no_verify, "Skip table verification");

  std::string dump_topo;
  auto* d = app.add_subcommand("dump-rg", "Print the augmented routing graph, one edge per line");
  d->add_option("topology", dump_topo, "Topology file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kIoError;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*v) return cmd_verify(verify_topo, verify_table_path);
    if (*c) return cmd_compare(cmp);
    if (*s) return cmd_sweep(sw);
    if (*d) {
      const Topology t = load_topology(dump_topo);
      std::cout << prepare_routing(t).rg.dump();
      return kOk;
    }
  } catch (const UnroutableError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnroutable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}
