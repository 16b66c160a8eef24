#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "evplace/master.hpp"
#include "evplace/mtap.hpp"
#include "evplace/spp.hpp"
#include "testutil.hpp"

using namespace evplace;
namespace tu = evplace::testutil;

namespace {

// the only route of the open corridor: road, recharge, road
ExpandedPath corridor_path(const ExpandedGraph& g) {
  std::vector<std::vector<int32_t>> chains;
  REQUIRE(tu::enumerate_simple_paths(g, 1, 3, 10, chains));
  REQUIRE(chains.size() == 1);
  return make_path(g, 1, 3, chains[0]);
}

std::vector<std::pair<int32_t, int32_t>> servable_pairs(const Instance& inst) {
  ExpandedGraph g = expand_graph(inst, tu::all_open(inst));
  std::vector<std::pair<int32_t, int32_t>> pairs;
  for (const auto& [od, d] : reachable_od_pairs(g, inst.demand).trips)
    pairs.push_back(od);
  return pairs;
}

}  // namespace

TEST_CASE("path columns cary counts and hours; the pool deduplicates") {
  Instance inst = tu::toy_corridor();
  ExpandedGraph g = expand_graph(inst, {1});
  ExpandedPath p = corridor_path(g);
  PathColumn col = to_column(p);
  CHECK(col.origin == 1);
  CHECK(col.dest == 3);
  CHECK(col.link_count.at(0) == 1);
  CHECK(col.link_count.at(1) == 1);
  CHECK(col.charge_hours.at(0) == doctest::Approx(1.0));

  PathPool pool;
  auto sig = path_signature(g, p.origin, p.arcs);
  auto [i0, fresh0] = pool.add(col, sig);
  auto [i1, fresh1] = pool.add(col, sig);
  CHECK(fresh0);
  CHECK(!fresh1);
  CHECK(i0 == i1);
  CHECK(pool.paths.size() == 1);

  // the signature survives re-expansion under another design
  ExpandedGraph g2 = expand_graph(inst, {1});
  CHECK(path_signature(g2, p.origin, p.arcs) == sig);
}

TEST_CASE("outer tangents touch the congestion integral") {
  Instance inst = tu::toy_corridor();
  CutPools cuts;
  CHECK(add_oa_cut(cuts, inst, 0, 0.0));
  CHECK(add_oa_cut(cuts, inst, 0, 100.0));
  CHECK(!add_oa_cut(cuts, inst, 0, 100.0));        // duplicate
  CHECK(!add_oa_cut(cuts, inst, 0, 100.0 + 1e-7));  // within snap radius
  CHECK(add_oa_cut(cuts, inst, 1, 100.0));          // same flow, other link
  CHECK(cuts.num_oa() == 3);
  CHECK(cuts.num_vf() == 0);

  const OaCut& at0 = std::get<OaCut>(cuts.cuts[0]);
  CHECK(at0.slope == doctest::Approx(10.0));
  CHECK(at0.intercept == doctest::Approx(0.0));
  const OaCut& at100 = std::get<OaCut>(cuts.cuts[1]);
  CHECK(at100.slope == doctest::Approx(11.5));
  CHECK(at100.intercept == doctest::Approx(-120.0));

  // tangency: equality at x1, strict underestimate elsewhere
  const Link& l = inst.net.links[0];
  CHECK(at100.slope * 100.0 + at100.intercept ==
        doctest::Approx(beckmann_integral_link(l, 100.0)));
  for (double x : {0.0, 40.0, 160.0, 300.0}) {
    CHECK(at100.slope * x + at100.intercept <=
          beckmann_integral_link(l, x) + 1e-9);
  }
}

TEST_CASE("value-function cuts record support, closed set and a safe big-M") {
  Instance inst = tu::toy_corridor();
  FlowSolution open_flow = solve_mtap(inst, {1});
  CutPools cuts;
  CHECK(add_vf_cut(cuts, inst, open_flow));
  CHECK(!add_vf_cut(cuts, inst, open_flow));  // duplicate response
  const VfCut& cut = std::get<VfCut>(cuts.cuts[0]);
  CHECK(cut.support == std::vector<int32_t>{0});
  CHECK(cut.closed.empty());
  CHECK(cut.rhs >= open_flow.value - 1e-9);
  double ceiling = follower_value_upper_bound(inst);
  CHECK(cut.big_m ==
        doctest::Approx(std::max(inst.cfg.vf_kappa * std::max(cut.rhs, 1.0),
                                 ceiling - cut.rhs)));

  FlowSolution closed_flow = solve_mtap(inst, {0});
  CHECK(add_vf_cut(cuts, inst, closed_flow));
  const VfCut& cut2 = std::get<VfCut>(cuts.cuts[1]);
  CHECK(cut2.support.empty());
  CHECK(cut2.closed == std::vector<int32_t>{0});
  CHECK(cuts.num_vf() == 2);
}

TEST_CASE("follower value ceiling dominates both corridor equilibria") {
  Instance inst = tu::toy_corridor();
  double ceiling = follower_value_upper_bound(inst);
  CHECK(ceiling >= solve_mtap(inst, {1}).value);
  CHECK(ceiling >= solve_mtap(inst, {0}).value);
}

TEST_CASE("root master prices service against revenue") {
  Instance inst = tu::toy_corridor();
  ExpandedGraph g = expand_graph(inst, {1});
  ExpandedPath p = corridor_path(g);
  PathPool pool;
  pool.add(to_column(p), path_signature(g, p.origin, p.arcs));
  CutPools cuts;
  auto pairs = servable_pairs(inst);
  std::vector<double> lo = {0.0}, up = {1.0};
  MasterSolution sol = solve_master(inst, pairs, pool, cuts, lo, up);
  REQUIRE(sol.feasible);
  // serves all 100 trips and sells 100 hours: -p v - w h + w D = -100
  CHECK(sol.objective == doctest::Approx(-100.0));
  CHECK(sol.h[0] == doctest::Approx(100.0));
  CHECK(sol.v[0] == doctest::Approx(100.0));
  // linking permits fractional y down to v / M
  CHECK(sol.y[0] >= 100.0 / inst.linking_big_m() - 1e-9);
  // budget row holds
  CHECK(inst.candidates[0].cost * sol.y[0] <= inst.cfg.budget + 1e-9);
  // coupling rows hold: x covers the path flow on both links
  CHECK(sol.x[0] >= sol.h[0] - 1e-9);
  CHECK(sol.x[1] >= sol.h[0] - 1e-9);
  // duals have the documented signs
  for (const auto& [od, s] : sol.sigma) CHECK(s >= -1e-12);
  for (double z : sol.zeta) CHECK(z >= -1e-12);
  for (double gm : sol.gamma) CHECK(gm <= 1e-12);
}

TEST_CASE("fixing a station closed kills its charging and its paths") {
  Instance inst = tu::toy_corridor();
  ExpandedGraph g = expand_graph(inst, {1});
  ExpandedPath p = corridor_path(g);
  PathPool pool;
  pool.add(to_column(p), path_signature(g, p.origin, p.arcs));
  CutPools cuts;
  auto pairs = servable_pairs(inst);
  std::vector<double> lo = {0.0}, up = {0.0};
  MasterSolution sol = solve_master(inst, pairs, pool, cuts, lo, up);
  REQUIRE(sol.feasible);
  CHECK(sol.v[0] == doctest::Approx(0.0));
  CHECK(sol.h[0] == doctest::Approx(0.0));
  // nothing served: the unmet penalty stands
  CHECK(sol.objective == doctest::Approx(10000.0));
}

TEST_CASE("master solutions satisfy the cuts they were built with") {
  Instance inst = tu::toy_corridor();
  ExpandedGraph g = expand_graph(inst, {1});
  ExpandedPath p = corridor_path(g);
  PathPool pool;
  pool.add(to_column(p), path_signature(g, p.origin, p.arcs));
  CutPools cuts;
  add_oa_cut(cuts, inst, 0, 0.0);
  add_oa_cut(cuts, inst, 1, 0.0);
  add_oa_cut(cuts, inst, 0, 100.0);
  add_oa_cut(cuts, inst, 1, 100.0);
  add_vf_cut(cuts, inst, solve_mtap(inst, {1}));
  add_vf_cut(cuts, inst, solve_mtap(inst, {0}));
  auto pairs = servable_pairs(inst);
  std::vector<double> lo = {0.0}, up = {1.0};
  MasterSolution sol = solve_master(inst, pairs, pool, cuts, lo, up);
  REQUIRE(sol.feasible);
  CHECK(sol.objective == doctest::Approx(-100.0));

  for (const auto& entry : cuts.cuts) {
    if (const OaCut* oa = std::get_if<OaCut>(&entry)) {
      CHECK(oa->slope * sol.x[oa->link] + oa->intercept <=
            sol.eta[oa->link] + 1e-6);
    } else {
      const VfCut& vf = std::get<VfCut>(entry);
      double lhs = 0.0;
      for (double e : sol.eta) lhs += e;
      for (double v : sol.v) lhs += inst.cfg.charge_value * v;
      double rhs = vf.rhs;
      for (int32_t l : vf.support) rhs += vf.big_m * (1.0 - sol.y[l]);
      for (int32_t l : vf.closed) rhs += vf.big_m * sol.y[l];
      CHECK(lhs <= rhs + 1e-6 * std::max(1.0, std::abs(rhs)));
    }
  }

  // warm restart after appending one more cut reproduces the cold solve
  add_oa_cut(cuts, inst, 0, 50.0);
  MasterSolution warm = solve_master(inst, pairs, pool, cuts, lo, up, &sol.basis);
  MasterSolution cold = solve_master(inst, pairs, pool, cuts, lo, up);
  REQUIRE(warm.feasible == cold.feasible);
  CHECK(warm.objective == doctest::Approx(cold.objective));
}

TEST_CASE("malformed master inputs are rejected") {
  Instance inst = tu::toy_corridor();
  PathPool pool;
  CutPools cuts;
  auto pairs = servable_pairs(inst);
  std::vector<double> lo = {0.0}, up = {1.0};
  CHECK_THROWS_AS(build_master_lp(inst, pairs, pool, cuts, {}, up),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_master_lp(inst, pairs, pool, cuts, lo, {0.5, 0.5}),
                  std::invalid_argument);

  // a pooled path whose OD pair is missing from `pairs`
  ExpandedGraph g = expand_graph(inst, {1});
  ExpandedPath p = corridor_path(g);
  pool.add(to_column(p), path_signature(g, p.origin, p.arcs));
  CHECK_THROWS_AS(build_master_lp(inst, {}, pool, cuts, lo, up),
                  std::logic_error);
}
