#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "evplace/net.hpp"
#include "testutil.hpp"

using namespace evplace;
namespace tu = evplace::testutil;

namespace {

Link make_link(double t0, double cap, double alpha, double beta) {
  Link l;
  l.tail = 1;
  l.head = 2;
  l.t0 = t0;
  l.capacity = cap;
  l.length = 1.0;
  l.alpha = alpha;
  l.beta = beta;
  return l;
}

}  // namespace

TEST_CASE("volume delay at reference loads") {
  Link l = make_link(10.0, 100.0, 0.15, 4.0);
  CHECK(bpr_time(l, 0.0) == doctest::Approx(10.0));
  CHECK(bpr_time(l, -5.0) == doctest::Approx(10.0));  // no negative-flow blowup
  CHECK(bpr_time(l, 100.0) == doctest::Approx(11.5));
  CHECK(bpr_time(l, 200.0) == doctest::Approx(34.0));
}

TEST_CASE("congestion integral matches adaptive quadrature") {
  const Link links[] = {
      make_link(10.0, 100.0, 0.15, 4.0),
      make_link(3.5, 80.0, 0.4, 1.0),
      make_link(7.0, 120.0, 0.0, 2.0),   // alpha 0: pure linear integral
      make_link(12.0, 60.0, 0.25, 2.5),  // fractional exponent
  };
  const double loads[] = {0.0, 13.7, 100.0, 257.3};
  for (const Link& l : links) {
    for (double x : loads) {
      double ref = tu::integrate([&](double u) { return bpr_time(l, u); }, 0.0, x);
      CHECK_MESSAGE(tu::rel_close(beckmann_integral_link(l, x), ref, 1e-9),
                    "load " << x << " closed form "
                            << beckmann_integral_link(l, x) << " quadrature "
                            << ref);
    }
  }
}

TEST_CASE("congestion integral is convex in the load") {
  Link l = make_link(10.0, 100.0, 0.15, 4.0);
  // supporting-line inequality B(x2) >= B(x1) + bpr(x1) (x2 - x1)
  const double pts[] = {0.0, 30.0, 75.0, 140.0, 220.0};
  for (double x1 : pts)
    for (double x2 : pts) {
      double lhs = beckmann_integral_link(l, x2);
      double rhs = beckmann_integral_link(l, x1) + bpr_time(l, x1) * (x2 - x1);
      CHECK(lhs >= rhs - 1e-9 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("demand table stores, accumulates via set, and totals") {
  DemandTable d;
  CHECK(d.at(1, 2) == 0.0);
  d.set(1, 2, 40.0);
  d.set(2, 3, 60.0);
  CHECK(d.at(1, 2) == 40.0);
  CHECK(d.total() == doctest::Approx(100.0));
  d.set(1, 2, 0.0);  // zero erases the entry
  CHECK(d.trips.count({1, 2}) == 0);
  CHECK_THROWS_AS(d.set(1, 2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(d.set(1, 2, std::nan("")), std::invalid_argument);
}

TEST_CASE("network validation rejects malformed links") {
  PhysicalNetwork net;
  net.num_nodes = 2;
  net.num_zones = 2;
  net.links.push_back(make_link(10.0, 100.0, 0.15, 4.0));
  net.validate();

  PhysicalNetwork bad = net;
  bad.links[0].head = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = net;
  bad.links[0].capacity = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = net;
  bad.links[0].beta = 0.5;  // loses convexity
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = net;
  bad.links[0].t0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = net;
  bad.num_zones = 5;  // more zones than nodes
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config validation rejects out-of-range parameters") {
  InstanceConfig cfg;
  cfg.validate();
  InstanceConfig bad = cfg;
  bad.budget = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.battery_quantum = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.battery_quantum = bad.battery_capacity * 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.fw_max_iters = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.cg_max_rounds = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("instance validation cross-checks candidates and demand") {
  Instance inst = tu::toy_corridor();
  inst.validate();

  Instance bad = inst;
  bad.candidates.push_back(bad.candidates[0]);  // duplicate node
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.candidates[0].node = 99;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.candidates[0].cost = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = inst;
  bad.net.num_zones = 2;  // demand destination 3 stops being a zone
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("linking bound uses the override or derives from demand") {
  Instance inst = tu::toy_corridor();
  // every trip recharging from empty: 100 * 10 / 6 hours
  CHECK(inst.linking_big_m() == doctest::Approx(100.0 * 10.0 / 6.0));
  inst.cfg.big_m = 42.0;
  CHECK(inst.linking_big_m() == 42.0);
  inst.cfg.big_m = 0.0;
  inst.demand = DemandTable{};
  CHECK(inst.linking_big_m() == 1.0);  // positive floor with no demand
}
