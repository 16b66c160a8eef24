#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "evplace/lp.hpp"
#include "testutil.hpp"

using namespace evplace;
namespace tu = evplace::testutil;

TEST_CASE("two-variable problems solve by hand") {
  // min -x - 2y  s.t. x + y <= 4, x <= 3, y <= 3, x,y >= 0
  LpModel lp;
  int32_t x = lp.add_var(0.0, 3.0, -1.0);
  int32_t y = lp.add_var(0.0, 3.0, -2.0);
  lp.add_row(RowSense::Le, 4.0, {{x, 1.0}, {y, 1.0}});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-7.0));
  CHECK(sol.primal[x] == doctest::Approx(1.0));
  CHECK(sol.primal[y] == doctest::Approx(3.0));
  tu::KktReport kkt = tu::check_kkt(lp, sol);
  CHECK_MESSAGE(kkt.ok, kkt.what);
}

TEST_CASE("equality rows and >= rows") {
  // min x + y  s.t. x + y == 2, x - y >= -1, bounds [0, 5]
  LpModel lp;
  int32_t x = lp.add_var(0.0, 5.0, 1.0);
  int32_t y = lp.add_var(0.0, 5.0, 1.0);
  lp.add_row(RowSense::Eq, 2.0, {{x, 1.0}, {y, 1.0}});
  lp.add_row(RowSense::Ge, -1.0, {{x, 1.0}, {y, -1.0}});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0));
  tu::KktReport kkt = tu::check_kkt(lp, sol);
  CHECK_MESSAGE(kkt.ok, kkt.what);
}

TEST_CASE("infeasibility is detected") {
  LpModel lp;
  int32_t x = lp.add_var(0.0, 1.0, 1.0);
  lp.add_row(RowSense::Ge, 5.0, {{x, 1.0}});
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);

  LpModel lp2;
  int32_t a = lp2.add_var(0.0, 10.0, 0.0);
  lp2.add_row(RowSense::Le, 1.0, {{a, 1.0}});
  lp2.add_row(RowSense::Ge, 2.0, {{a, 1.0}});
  CHECK(solve_lp(lp2).status == LpStatus::Infeasible);
}

TEST_CASE("unboundedness is detected") {
  LpModel lp;
  lp.add_var(0.0, std::numeric_limits<double>::infinity(), -1.0);
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate ties still terminate") {
  // several rows active at the optimum with identical rhs
  LpModel lp;
  int32_t x = lp.add_var(0.0, 10.0, -1.0);
  int32_t y = lp.add_var(0.0, 10.0, -1.0);
  int32_t z = lp.add_var(0.0, 10.0, -1.0);
  lp.add_row(RowSense::Le, 2.0, {{x, 1.0}, {y, 1.0}});
  lp.add_row(RowSense::Le, 2.0, {{y, 1.0}, {z, 1.0}});
  lp.add_row(RowSense::Le, 2.0, {{x, 1.0}, {z, 1.0}});
  lp.add_row(RowSense::Le, 2.0, {{x, 1.0}, {y, 1.0}, {z, 1.0}});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-2.0));
  tu::KktReport kkt = tu::check_kkt(lp, sol);
  CHECK_MESSAGE(kkt.ok, kkt.what);
}

TEST_CASE("random problems agree with vertex enumeration") {
  std::mt19937 rng(2024);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 250; ++trial) {
    LpModel lp = tu::random_lp(rng);
    LpSolution sol = solve_lp(lp);
    tu::VertexOptimum ref = tu::lp_vertex_optimum(lp);
    if (ref.status == LpStatus::Infeasible) {
      ++infeasible;
      CHECK_MESSAGE(sol.status == LpStatus::Infeasible, "trial " << trial);
      continue;
    }
    ++optimal;
    REQUIRE_MESSAGE(sol.status == LpStatus::Optimal, "trial " << trial);
    CHECK_MESSAGE(tu::rel_close(sol.objective, ref.objective, 1e-6),
                  "trial " << trial << " simplex " << sol.objective
                           << " vertex " << ref.objective);
    tu::KktReport kkt = tu::check_kkt(lp, sol);
    CHECK_MESSAGE(kkt.ok, "trial " << trial << ": " << kkt.what);
  }
  // the generator leans feasible but must exercise both outcomes
  CHECK(optimal > 100);
  CHECK(infeasible >= 5);
}

TEST_CASE("warm starts survive appended rows and variables") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    LpModel lp = tu::random_lp(rng);
    LpSolution cold = solve_lp(lp);
    if (cold.status != LpStatus::Optimal) continue;

    // cut off the current optimum with a new row through its interior
    std::vector<std::pair<int32_t, double>> coeffs;
    double act = 0.0;
    for (size_t j = 0; j < lp.vars.size(); ++j) {
      coeffs.push_back({static_cast<int32_t>(j), 1.0});
      act += cold.primal[j];
    }
    lp.add_row(RowSense::Le, act - 0.25, coeffs);
    LpSolution warm = solve_lp(lp, cold.basis);
    LpSolution fresh = solve_lp(lp);
    REQUIRE(warm.status == fresh.status);
    if (warm.status == LpStatus::Optimal) {
      CHECK(tu::rel_close(warm.objective, fresh.objective, 1e-7));
      tu::KktReport kkt = tu::check_kkt(lp, warm);
      CHECK_MESSAGE(kkt.ok, kkt.what);

      // appended variable with favorable cost must enter
      int32_t v = lp.add_var(0.0, 1.0, -50.0);
      LpSolution warm2 = solve_lp(lp, warm.basis);
      LpSolution fresh2 = solve_lp(lp);
      REQUIRE(warm2.status == fresh2.status);
      if (warm2.status == LpStatus::Optimal) {
        CHECK(tu::rel_close(warm2.objective, fresh2.objective, 1e-7));
        CHECK(warm2.primal[v] == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("pivot counts are reported and text dump mentions every variable") {
  LpModel lp;
  int32_t x = lp.add_var(0.0, 3.0, -1.0);
  lp.add_row(RowSense::Le, 2.0, {{x, 1.0}});
  LpSolution sol = solve_lp(lp);
  CHECK(sol.pivots >= 0);
  std::string text = to_lp_text(lp);
  CHECK(!text.empty());
}
