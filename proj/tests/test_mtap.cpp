#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "evplace/mtap.hpp"
#include "evplace/net.hpp"
#include "testutil.hpp"

using namespace evplace;
namespace tu = evplace::testutil;

TEST_CASE("corridor equilibrium with the station open") {
  Instance inst = tu::toy_corridor();
  FlowSolution sol = solve_mtap(inst, {1});
  CHECK(sol.converged);
  CHECK(sol.iterations == 1);  // single route, first step is exact
  REQUIRE(sol.x.size() == 2);
  REQUIRE(sol.v.size() == 1);
  CHECK(sol.x[0] == doctest::Approx(100.0));
  CHECK(sol.x[1] == doctest::Approx(100.0));
  CHECK(sol.v[0] == doctest::Approx(100.0));  // one hour of charging each
  CHECK(sol.served.at({1, 3}) == doctest::Approx(100.0));
  // two congested links at 1030 each plus 100 hours valued at 1
  CHECK(sol.value == doctest::Approx(2160.0));
  CHECK(upper_level_value(inst, sol) == doctest::Approx(-100.0));
}

TEST_CASE("corridor equilibrium with the station closed") {
  Instance inst = tu::toy_corridor();
  FlowSolution sol = solve_mtap(inst, {0});
  CHECK(sol.converged);
  CHECK(sol.iterations == 0);  // no reachable demand, nothing to assign
  CHECK(sol.served.empty());
  CHECK(sol.value == 0.0);
  for (double x : sol.x) CHECK(x == 0.0);
  CHECK(sol.v[0] == 0.0);
  CHECK(upper_level_value(inst, sol) == doctest::Approx(10000.0));
}

TEST_CASE("parallel routes equalize travel times") {
  Instance inst = tu::parallel_pair();
  Instance tight = inst;
  tight.cfg.fw_tolerance = 1e-9;
  tight.cfg.fw_max_iters = 20000;
  FlowSolution sol = solve_mtap(tight, {});
  CHECK(sol.converged);
  CHECK(sol.rel_gap <= 1e-9);
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(150.0));
  CHECK(sol.x[0] > 0.0);
  CHECK(sol.x[1] > 0.0);
  double t0 = bpr_time(inst.net.links[0], sol.x[0]);
  double t1 = bpr_time(inst.net.links[1], sol.x[1]);
  CHECK_MESSAGE(std::abs(t0 - t1) <= 1e-3 * std::max(t0, t1),
                "times " << t0 << " vs " << t1);
}

TEST_CASE("iteration cap reports a non-converged solution") {
  Instance inst = tu::parallel_pair();
  inst.cfg.fw_tolerance = 1e-12;
  inst.cfg.fw_max_iters = 1;
  FlowSolution sol = solve_mtap(inst, {});
  CHECK(!sol.converged);
  CHECK(sol.iterations == 1);
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(150.0));
}

TEST_CASE("partially reachable demand is partially served") {
  // one-way corridor: 1->2->3 serves (1,3) when the station is open, but
  // (3,1) has no arcs at all
  Instance inst = tu::InstanceBuilder(3)
                      .link(1, 2)
                      .link(2, 3)
                      .demand(1, 3, 100.0)
                      .demand(3, 1, 50.0)
                      .site(2, 1.0)
                      .build();
  FlowSolution sol = solve_mtap(inst, {1});
  CHECK(sol.served.count({1, 3}) == 1);
  CHECK(sol.served.count({3, 1}) == 0);
  // unmet 50 at weight 100, revenue 100 hours at price 1
  CHECK(upper_level_value(inst, sol) == doctest::Approx(5000.0 - 100.0));
}

TEST_CASE("closed stations carry exactly zero charging flow") {
  for (uint32_t seed : {51u, 52u, 53u}) {
    Instance inst = tu::random_instance(seed);
    std::vector<uint8_t> design(inst.candidates.size(), 0);
    for (size_t l = 0; l < design.size(); l += 2) design[l] = 1;
    FlowSolution sol = solve_mtap(inst, design);
    for (size_t l = 0; l < design.size(); ++l)
      if (!design[l]) CHECK(sol.v[l] == 0.0);
  }
}

TEST_CASE("follower objective evaluates the closed form") {
  Instance inst = tu::toy_corridor();
  std::vector<double> x = {30.0, 70.0};
  std::vector<double> v = {5.0};
  double expected = beckmann_integral_link(inst.net.links[0], 30.0) +
                    beckmann_integral_link(inst.net.links[1], 70.0) +
                    inst.cfg.charge_value * 5.0;
  CHECK(lower_level_value(inst, x, v) == doctest::Approx(expected));
  CHECK_THROWS_AS(lower_level_value(inst, {1.0}, v), std::invalid_argument);
  CHECK_THROWS_AS(lower_level_value(inst, x, {}), std::invalid_argument);
}

TEST_CASE("leader objective clamps oversupplied service") {
  Instance inst = tu::toy_corridor();
  FlowSolution sol;
  sol.open = {1};
  sol.x = {0.0, 0.0};
  sol.v = {2.0};
  sol.served[{1, 3}] = 150.0;  // more than the table holds
  CHECK(upper_level_value(inst, sol) == doctest::Approx(-2.0));
}

TEST_CASE("equilibrium solves are deterministic") {
  Instance inst = tu::random_instance(54);
  FlowSolution a = solve_mtap(inst, tu::all_open(inst));
  FlowSolution b = solve_mtap(inst, tu::all_open(inst));
  REQUIRE(a.x.size() == b.x.size());
  for (size_t l = 0; l < a.x.size(); ++l) CHECK(a.x[l] == b.x[l]);
  for (size_t l = 0; l < a.v.size(); ++l) CHECK(a.v[l] == b.v[l]);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("design vector must match the candidate count") {
  Instance inst = tu::toy_corridor();
  CHECK_THROWS_AS(solve_mtap(inst, {1, 0}), std::invalid_argument);
}
