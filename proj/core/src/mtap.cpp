#include "evplace/mtap.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "evplace/spp.hpp"

namespace evplace {

double lower_level_value(const Instance& inst, const std::vector<double>& x,
                         const std::vector<double>& v) {
  const auto& links = inst.net.links;
  if (x.size() != links.size() || v.size() != inst.candidates.size()) {
    throw std::invalid_argument("flow vector sizes do not match the instance");
  }
  double total = 0.0;
  for (size_t l = 0; l < links.size(); ++l) {
    total += beckmann_integral_link(links[l], x[l]);
  }
  for (double vl : v) total += inst.cfg.charge_value * vl;
  return total;
}

double upper_level_value(const Instance& inst, const FlowSolution& sol) {
  double charged = 0.0;
  for (double vl : sol.v) charged += vl;
  double served = 0.0;
  for (const auto& [od, d] : sol.served) served += d;
  double unmet = inst.demand.total() - served;
  if (unmet < 0.0) unmet = 0.0;
  return -inst.cfg.charge_price * charged + inst.cfg.unmet_weight * unmet;
}

namespace {

struct AonResult {
  std::vector<double> x;  // per link
  std::vector<double> v;  // per candidate, in vehicle-hours
  double value = 0.0;     // total cost of the assignment at the quoted costs
};

AonResult all_or_nothing(
    const ExpandedGraph& g, const Instance& inst,
    const std::vector<double>& arc_cost,
    const std::map<std::pair<int32_t, int32_t>, double>& demand) {
  AonResult out;
  out.x.assign(inst.net.links.size(), 0.0);
  out.v.assign(inst.candidates.size(), 0.0);

  std::set<int32_t> origins;
  for (const auto& [od, d] : demand) {
    if (d > 0.0) origins.insert(od.first);
  }
  for (int32_t r : origins) {
    int32_t src = g.origin_entry.at(r);
    LabelTree tree = shortest_paths_one_to_all(g, arc_cost, src);
    for (const auto& [od, d] : demand) {
      if (od.first != r || d <= 0.0) continue;
      int32_t node = best_dest_node(g, tree, od.second);
      if (node < 0 || !std::isfinite(tree.dist[node])) {
        throw std::logic_error("reachable OD pair lost during assignment");
      }
      out.value += d * tree.dist[node];
      while (node != src) {
        int32_t a = tree.pred_arc[node];
        const ExpandedArc& arc = g.arcs[a];
        if (arc.kind == ArcKind::Road) {
          out.x[arc.ref] += d;
        } else {
          out.v[arc.ref] += d * arc.charge_duration;
        }
        node = arc.tail;
      }
    }
  }
  return out;
}

// Derivative of the restricted objective along the direction (dx, dV):
// g(theta) = sum_l bpr(x_l + theta dx_l) dx_l + charge_value * dV.
double directional_derivative(const Instance& inst, const std::vector<double>& x,
                              const std::vector<double>& dx, double dv,
                              double theta) {
  double g = inst.cfg.charge_value * dv;
  for (size_t l = 0; l < x.size(); ++l) {
    if (dx[l] == 0.0) continue;
    g += bpr_time(inst.net.links[l], x[l] + theta * dx[l]) * dx[l];
  }
  return g;
}

// Exact minimiser of the convex restricted objective on [0, 1] by bisection
// on its derivative.
double line_search(const Instance& inst, const std::vector<double>& x,
                   const std::vector<double>& dx, double dv) {
  double g0 = directional_derivative(inst, x, dx, dv, 0.0);
  if (g0 >= 0.0) return 0.0;
  double g1 = directional_derivative(inst, x, dx, dv, 1.0);
  if (g1 <= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (directional_derivative(inst, x, dx, dv, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FlowSolution solve_mtap(const Instance& inst, const std::vector<uint8_t>& open) {
  if (open.size() != inst.candidates.size()) {
    throw std::invalid_argument("design size does not match candidate count");
  }
  FlowSolution sol;
  sol.open = open;
  sol.x.assign(inst.net.links.size(), 0.0);
  sol.v.assign(inst.candidates.size(), 0.0);

  ExpandedGraph g = expand_graph(inst, open);
  DemandTable feasible = reachable_od_pairs(g, inst.demand);
  std::map<std::pair<int32_t, int32_t>, double> demand;
  for (const auto& [od, d] : feasible.trips) {
    if (d > 0.0) {
      demand[od] = d;
      sol.served[od] = d;
    }
  }
  if (demand.empty()) {
    sol.value = 0.0;
    sol.rel_gap = 0.0;
    sol.converged = true;
    return sol;
  }

  CostView view;
  view.road_cost = [&](int32_t l) {
    return bpr_time(inst.net.links[l], sol.x[l]);
  };
  view.charge_cost = [&](int32_t, double duration) {
    return inst.cfg.charge_value * duration;
  };

  double prev_obj = std::numeric_limits<double>::infinity();
  sol.converged = false;
  for (int iter = 0; iter <= inst.cfg.fw_max_iters; ++iter) {
    std::vector<double> arc_cost = arc_costs(g, view);
    AonResult aon = all_or_nothing(g, inst, arc_cost, demand);

    double total_v = 0.0;
    for (double vl : sol.v) total_v += vl;
    double tc = inst.cfg.charge_value * total_v;
    for (size_t l = 0; l < sol.x.size(); ++l) {
      tc += bpr_time(inst.net.links[l], sol.x[l]) * sol.x[l];
    }

    if (iter > 0) {
      sol.rel_gap = tc > 0.0 ? (tc - aon.value) / tc : 0.0;
      sol.iterations = iter;
      if (sol.rel_gap <= inst.cfg.fw_tolerance) {
        sol.converged = true;
        break;
      }
      if (iter == inst.cfg.fw_max_iters) break;
    }

    std::vector<double> dx(sol.x.size());
    for (size_t l = 0; l < sol.x.size(); ++l) dx[l] = aon.x[l] - sol.x[l];
    double aon_v = 0.0;
    for (double vl : aon.v) aon_v += vl;
    double dv = aon_v - total_v;

    double theta = iter == 0 ? 1.0 : line_search(inst, sol.x, dx, dv);
    for (size_t l = 0; l < sol.x.size(); ++l) sol.x[l] += theta * dx[l];
    for (size_t c = 0; c < sol.v.size(); ++c) {
      sol.v[c] += theta * (aon.v[c] - sol.v[c]);
    }

    double obj = lower_level_value(inst, sol.x, sol.v);
    if (obj > prev_obj + 1e-7 * (1.0 + std::abs(prev_obj))) {
      throw std::logic_error("equilibrium objective increased along the step");
    }
    prev_obj = obj;
  }

  for (size_t c = 0; c < sol.v.size(); ++c) {
    if (!open[c] && sol.v[c] != 0.0) {
      throw std::logic_error("charging flow at a closed station");
    }
  }
  sol.value = lower_level_value(inst, sol.x, sol.v);
  return sol;
}

}  // namespace evplace
