#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "evplace/bpc.hpp"
#include "evplace/colgen.hpp"
#include "evplace/oracle.hpp"
#include "evplace/spp.hpp"
#include "testutil.hpp"

using namespace evplace;
namespace tu = evplace::testutil;

namespace {

void BM_bpr_integral(benchmark::State& state) {
  Link link;
  link.t0 = 10.0;
  link.capacity = 120.0;
  for (auto _ : state) {
    double acc = 0.0;
    for (int x = 0; x < 400; ++x)
      acc += beckmann_integral_link(link, static_cast<double>(x));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_bpr_integral);

void BM_expand_grid(benchmark::State& state) {
  Instance inst = tu::ema_grid();
  std::vector<uint8_t> open = tu::all_open(inst);
  for (auto _ : state) {
    ExpandedGraph g = expand_graph(inst, open);
    benchmark::DoNotOptimize(g.nodes.size());
  }
}
BENCHMARK(BM_expand_grid);

void BM_shortest_path_tree(benchmark::State& state) {
  Instance inst = tu::ema_grid();
  ExpandedGraph g = expand_graph(inst, tu::all_open(inst));
  std::vector<double> cost(g.arcs.size());
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (double& c : cost) c = u(rng);
  int32_t source = g.origin_entry[1];
  for (auto _ : state) {
    LabelTree tree = shortest_paths_one_to_all(g, cost, source);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_shortest_path_tree);

void BM_equilibrium_small(benchmark::State& state) {
  Instance inst = tu::random_instance(202);
  std::vector<uint8_t> open = tu::all_open(inst);
  for (auto _ : state) {
    FlowSolution flow = solve_mtap(inst, open);
    benchmark::DoNotOptimize(flow.value);
  }
}
BENCHMARK(BM_equilibrium_small);

void BM_lp_solve(benchmark::State& state) {
  std::mt19937 rng(7);
  std::vector<LpModel> models;
  for (int k = 0; k < 32; ++k) models.push_back(tu::random_lp(rng));
  size_t i = 0;
  for (auto _ : state) {
    LpSolution sol = solve_lp(models[i++ % models.size()]);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_lp_solve);

void BM_root_relaxation(benchmark::State& state) {
  Instance inst = tu::dag_instance(0);
  ExpandedGraph g = expand_graph(inst, tu::all_open(inst));
  std::vector<std::pair<int32_t, int32_t>> pairs;
  for (const auto& [od, d] : reachable_od_pairs(g, inst.demand).trips)
    pairs.push_back(od);
  CostView view;
  view.road_cost = [&inst](int32_t l) { return inst.net.links[l].t0; };
  view.charge_cost = [&inst](int32_t, double dur) {
    return inst.cfg.charge_value * dur;
  };
  for (auto _ : state) {
    PathPool pool;
    std::set<int32_t> origins;
    for (auto [r, s] : pairs) origins.insert(r);
    for (int32_t r : origins) {
      LabelTree tree = shortest_paths_one_to_all(g, view, g.origin_entry[r]);
      for (auto [rr, s] : pairs) {
        if (rr != r) continue;
        if (auto p = extract_path(g, tree, r, s))
          pool.add(to_column(*p), path_signature(g, r, p->arcs));
      }
    }
    CutPools cuts;
    std::vector<double> lo(inst.candidates.size(), 0.0);
    std::vector<double> up(inst.candidates.size(), 1.0);
    NodeRelaxation node =
        solve_node_relaxation(inst, pairs, pool, cuts, lo, up);
    benchmark::DoNotOptimize(node.master.objective);
  }
}
BENCHMARK(BM_root_relaxation);

void BM_search_corridor(benchmark::State& state) {
  Instance inst = tu::toy_corridor();
  for (auto _ : state) {
    BpcResult res = run_bpc(inst);
    benchmark::DoNotOptimize(res.upper_bound);
  }
}
BENCHMARK(BM_search_corridor);

void BM_search_random(benchmark::State& state) {
  Instance inst = tu::random_instance(202);
  for (auto _ : state) {
    BpcResult res = run_bpc(inst);
    benchmark::DoNotOptimize(res.upper_bound);
  }
}
BENCHMARK(BM_search_random);

}  // namespace

BENCHMARK_MAIN();
