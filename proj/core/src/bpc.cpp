#include "evplace/bpc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "evplace/spp.hpp"

namespace evplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

double gap_percent(double ub, double lb) {
  // without a finite incumbent the quotient is inf/inf; report an open gap
  if (!std::isfinite(ub)) return kInf;
  double gap = 100.0 * (ub - lb) / std::max(std::abs(ub), 1e-9);
  return std::max(gap, 0.0);
}

struct Node {
  std::vector<int8_t> fix;
  double lb = -kInf;
  int64_t seq = 0;
  LpBasis basis;
  bool has_basis = false;
};

// min-heap on (lb, insertion order)
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;
    return a.seq > b.seq;
  }
};

std::vector<uint8_t> design_from_fix(const std::vector<int8_t>& fix) {
  std::vector<uint8_t> d(fix.size(), 0);
  for (size_t l = 0; l < fix.size(); ++l) d[l] = fix[l] == 1 ? 1 : 0;
  return d;
}

// Rounds a fractional master point to a budget-feasible design: open at
// y >= 0.5, then close smallest-y (ties: priciest) sites until affordable.
std::vector<uint8_t> round_to_budget(const Instance& inst,
                                     const std::vector<double>& y) {
  std::vector<uint8_t> d(y.size(), 0);
  double spent = 0.0;
  for (size_t l = 0; l < y.size(); ++l) {
    if (y[l] >= 0.5) {
      d[l] = 1;
      spent += inst.candidates[l].cost;
    }
  }
  while (spent > inst.cfg.budget + 1e-9) {
    int32_t drop = -1;
    for (size_t l = 0; l < d.size(); ++l) {
      if (!d[l]) continue;
      if (drop < 0 || y[l] < y[drop] - 1e-12 ||
          (std::abs(y[l] - y[drop]) <= 1e-12 &&
           inst.candidates[l].cost > inst.candidates[drop].cost)) {
        drop = static_cast<int32_t>(l);
      }
    }
    if (drop < 0) break;
    d[drop] = 0;
    spent -= inst.candidates[drop].cost;
  }
  return d;
}

}  // namespace

NodeCheck check_node(const Instance& inst, std::vector<int8_t>& fix) {
  double spent = 0.0;
  for (size_t l = 0; l < fix.size(); ++l) {
    if (fix[l] == 1) spent += inst.candidates[l].cost;
  }
  if (spent > inst.cfg.budget + 1e-7) return NodeCheck::Infeasible;

  double remaining = inst.cfg.budget - spent;
  double cheapest = kInf;
  bool any_undecided = false;
  for (size_t l = 0; l < fix.size(); ++l) {
    if (fix[l] == -1) {
      any_undecided = true;
      cheapest = std::min(cheapest, inst.candidates[l].cost);
    }
  }
  if (!any_undecided) return NodeCheck::Fixed;
  if (remaining + 1e-7 < cheapest) {
    for (size_t l = 0; l < fix.size(); ++l) {
      if (fix[l] == -1) fix[l] = 0;
    }
    return NodeCheck::Fixed;
  }
  return NodeCheck::Unfixed;
}

int32_t select_branch_variable(const MasterSolution& master,
                               const std::vector<int8_t>& fix) {
  int32_t best = -1;
  double best_v = -kInf;
  for (size_t l = 0; l < master.y.size(); ++l) {
    if (std::abs(master.y[l] - std::round(master.y[l])) <= kIntTol) continue;
    if (master.v[l] > best_v) {
      best_v = master.v[l];
      best = static_cast<int32_t>(l);
    }
  }
  if (best >= 0) return best;
  for (size_t l = 0; l < fix.size(); ++l) {
    if (fix[l] != -1) continue;
    if (master.v[l] > best_v) {
      best_v = master.v[l];
      best = static_cast<int32_t>(l);
    }
  }
  return best;
}

BpcResult run_bpc(const Instance& inst) {
  inst.validate();
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start)
        .count();
  };
  LpDeadline lp_deadline = kNoDeadline;
  if (std::isfinite(inst.cfg.time_limit) && inst.cfg.time_limit < 1e9) {
    lp_deadline = t_start + std::chrono::duration_cast<
                                std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(
                                    inst.cfg.time_limit));
  }

  BpcResult res;
  const int32_t C = static_cast<int32_t>(inst.candidates.size());
  const int32_t L = static_cast<int32_t>(inst.net.links.size());

  std::vector<uint8_t> all_open(C, 1);
  ExpandedGraph g_all = expand_graph(inst, all_open);
  DemandTable servable = reachable_od_pairs(g_all, inst.demand);
  std::vector<std::pair<int32_t, int32_t>> pairs;
  for (const auto& [od, d] : servable.trips) {
    if (d > 0.0) pairs.push_back(od);
  }

  PathPool pool;
  CutPools cuts;
  {
    // seed one free-flow path per servable pair so the first master already
    // routes something
    CostView view;
    view.road_cost = [&](int32_t l) { return inst.net.links[l].t0; };
    view.charge_cost = [&](int32_t, double dur) {
      return inst.cfg.charge_value * dur;
    };
    int32_t cur = -1;
    LabelTree tree;
    for (const auto& [r, s] : pairs) {
      if (r != cur) {
        cur = r;
        tree = shortest_paths_one_to_all(g_all, view, g_all.origin_entry[r]);
      }
      auto path = extract_path(g_all, tree, r, s);
      if (path) {
        pool.add(to_column(*path), path_signature(g_all, r, path->arcs));
      }
    }
    for (int32_t a = 0; a < L; ++a) add_oa_cut(cuts, inst, a, 0.0);
  }

  double ub = kInf;
  std::map<std::vector<uint8_t>, FlowSolution> memo;
  auto evaluate = [&](const std::vector<uint8_t>& d) -> const FlowSolution& {
    auto it = memo.find(d);
    if (it == memo.end()) {
      ++res.mtap_solves;
      it = memo.emplace(d, solve_mtap(inst, d)).first;
    }
    return it->second;
  };
  auto probe = [&](const std::vector<uint8_t>& d) {
    double spent = 0.0;
    for (int32_t l = 0; l < C; ++l) {
      if (d[l]) spent += inst.candidates[l].cost;
    }
    if (spent > inst.cfg.budget + 1e-7) return;
    const FlowSolution& flow = evaluate(d);
    double obj = upper_level_value(inst, flow);
    if (obj < ub - 1e-12) {
      ub = obj;
      res.best_design = d;
      res.best_flow = flow;
    }
    add_vf_cut(cuts, inst, flow);
    for (int32_t a = 0; a < L; ++a) add_oa_cut(cuts, inst, a, flow.x[a]);
  };

  const double fathom_tol = std::max(inst.cfg.epsilon, 1e-9);
  std::priority_queue<Node, std::vector<Node>, NodeOrder> frontier;
  int64_t seq = 0;
  auto branch = [&](const Node& parent, int32_t bv, double bound,
                    const LpBasis* basis) {
    for (int8_t val : {int8_t{1}, int8_t{0}}) {  // open branch first
      Node child;
      child.fix = parent.fix;
      child.fix[bv] = val;
      child.lb = bound;
      child.seq = seq++;
      if (basis) {
        child.basis = *basis;
        child.has_basis = true;
      }
      NodeCheck ck = check_node(inst, child.fix);
      if (ck == NodeCheck::Infeasible) {
        res.fathoms.push_back(
            {FathomEvent::Reason::Budget, child.fix, bound, ub});
        continue;
      }
      if (ck == NodeCheck::Fixed) {
        probe(design_from_fix(child.fix));
        res.fathoms.push_back(
            {FathomEvent::Reason::Leaf, child.fix, bound, ub});
        continue;
      }
      frontier.push(std::move(child));
    }
  };
  {
    Node root;
    root.fix.assign(C, -1);
    root.lb = -kInf;
    root.seq = seq++;
    NodeCheck ck = check_node(inst, root.fix);
    if (ck == NodeCheck::Fixed) {
      // budget admits no open station, so the forced all-closed design is
      // the entire feasible set and its value is an exact root bound
      probe(design_from_fix(root.fix));
      res.fathoms.push_back(
          {FathomEvent::Reason::Leaf, root.fix, root.lb, ub});
      res.trace.push_back({0, ub, ub, ub, gap_percent(ub, ub),
                           static_cast<int>(pool.paths.size()), cuts.num_oa(),
                           cuts.num_vf(), elapsed()});
    } else if (ck == NodeCheck::Unfixed) {
      frontier.push(std::move(root));
    }
  }

  int pops = 0;
  bool timed_out = false;
  // Reported global bound. Once proven it never regresses, even when the
  // incumbent later dips below it by equilibrium-solver noise.
  double glb = -kInf;
  auto raise_glb = [&](double candidate) {
    glb = std::max(glb, std::min(candidate, ub));
  };
  while (!frontier.empty()) {
    if (elapsed() > inst.cfg.time_limit) {
      timed_out = true;
      raise_glb(frontier.top().lb);
      break;
    }
    Node node = frontier.top();
    frontier.pop();
    double t_node = elapsed();
    int idx = pops++;

    if (node.lb >= ub - fathom_tol) {
      // best-first order: every other frontier node clears the bound too
      res.fathoms.push_back({FathomEvent::Reason::Bound, node.fix, node.lb, ub});
      raise_glb(node.lb);
      res.trace.push_back({idx, node.lb, glb, ub, gap_percent(ub, glb),
                           static_cast<int>(pool.paths.size()), cuts.num_oa(),
                           cuts.num_vf(), elapsed() - t_node});
      break;
    }

    ++res.nodes_solved;
    std::vector<double> y_lo(C, 0.0), y_up(C, 1.0);
    for (int32_t l = 0; l < C; ++l) {
      if (node.fix[l] == 0) y_up[l] = 0.0;
      if (node.fix[l] == 1) y_lo[l] = 1.0;
    }
    NodeRelaxation relax;
    bool relax_ok = true;
    try {
      relax = solve_node_relaxation(inst, pairs, pool, cuts, y_lo, y_up,
                                    node.has_basis ? &node.basis : nullptr,
                                    lp_deadline);
    } catch (const LpError&) {
      // the master defeated the LP solver; the inherited bound stays valid
      // and the node is branched rather than fathomed, so leaves still get
      // evaluated exactly
      relax_ok = false;
    }
    res.cg_rounds += relax_ok ? relax.rounds : 0;

    double node_lb;
    if (!relax_ok) {
      node_lb = node.lb;
    } else if (!relax.master.feasible) {
      node_lb = kInf;
    } else if (relax.priced_out) {
      node_lb = std::max(relax.master.objective, node.lb);
    } else {
      node_lb = node.lb;  // pricing unfinished, keep the inherited bound
    }

    if (relax.master.feasible && node_lb < ub - fathom_tol) {
      bool integral = true;
      for (double yl : relax.master.y) {
        if (std::abs(yl - std::round(yl)) > kIntTol) {
          integral = false;
          break;
        }
      }
      std::vector<uint8_t> guess;
      if (integral) {
        guess.assign(C, 0);
        for (int32_t l = 0; l < C; ++l) {
          guess[l] = relax.master.y[l] > 0.5 ? 1 : 0;
        }
      } else {
        guess = round_to_budget(inst, relax.master.y);
      }
      probe(guess);

      int32_t bv = select_branch_variable(relax.master, node.fix);
      if (bv >= 0) {
        branch(node, bv, node_lb, &relax.master.basis);
      }
    } else if (!relax_ok) {
      // no relaxation to guide the split; fix the lowest undecided station
      int32_t bv = -1;
      for (int32_t l = 0; l < C; ++l) {
        if (node.fix[l] == -1) {
          bv = l;
          break;
        }
      }
      if (bv >= 0) {
        branch(node, bv, node_lb, node.has_basis ? &node.basis : nullptr);
      }
    } else {
      // infeasible relaxation (node_lb = +inf) or bound cleared after pricing
      res.fathoms.push_back({FathomEvent::Reason::Bound, node.fix, node_lb, ub});
    }

    raise_glb(frontier.empty() ? node_lb : frontier.top().lb);
    res.trace.push_back({idx, node_lb, glb, ub, gap_percent(ub, glb),
                         static_cast<int>(pool.paths.size()), cuts.num_oa(),
                         cuts.num_vf(), elapsed() - t_node});
  }

  double final_lb =
      (!timed_out && frontier.empty()) ? ub : std::min(glb, ub);
  res.status = timed_out ? BpcStatus::TimeLimit : BpcStatus::Optimal;
  res.upper_bound = ub;
  res.lower_bound = final_lb;
  res.gap_pct = gap_percent(ub, final_lb);
  res.columns = static_cast<int>(pool.paths.size());
  res.oa_cuts = cuts.num_oa();
  res.vf_cuts = cuts.num_vf();
  res.seconds = elapsed();
  res.pool = std::move(pool);
  res.cuts = std::move(cuts);
  return res;
}

}  // namespace evplace
