#include "evplace/colgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace evplace {

namespace {

constexpr double kPriceTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest walks from (origin, full) split by recharge count. dist[k][n] is
// the cheapest cost reaching n using exactly k charging arcs.
struct LayeredTree {
  std::vector<std::vector<double>> dist;
  std::vector<std::vector<int32_t>> pred;  // arc ids; charging arcs step k-1
};

void relax_roads_within_layer(const ExpandedGraph& g,
                              const std::vector<double>& arc_cost,
                              std::vector<double>& dist,
                              std::vector<int32_t>& pred) {
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (size_t n = 0; n < dist.size(); ++n) {
    if (std::isfinite(dist[n])) heap.emplace(dist[n], static_cast<int32_t>(n));
  }
  while (!heap.empty()) {
    auto [d, n] = heap.top();
    heap.pop();
    if (d > dist[n]) continue;
    for (int32_t a : g.out[n]) {
      const ExpandedArc& arc = g.arcs[a];
      if (arc.kind != ArcKind::Road) continue;
      double nd = d + arc_cost[a];
      if (nd < dist[arc.head] - 1e-15) {
        dist[arc.head] = nd;
        pred[arc.head] = a;
        heap.emplace(nd, arc.head);
      }
    }
  }
}

LayeredTree layered_search(const ExpandedGraph& g,
                           const std::vector<double>& arc_cost, int32_t src,
                           int32_t max_charges) {
  const size_t n = g.nodes.size();
  LayeredTree tree;
  tree.dist.assign(1, std::vector<double>(n, kInf));
  tree.pred.assign(1, std::vector<int32_t>(n, -1));
  tree.dist[0][src] = 0.0;
  relax_roads_within_layer(g, arc_cost, tree.dist[0], tree.pred[0]);

  std::vector<double> best = tree.dist[0];
  for (int32_t k = 1; k <= max_charges; ++k) {
    std::vector<double> dist(n, kInf);
    std::vector<int32_t> pred(n, -1);
    const std::vector<double>& prev = tree.dist[k - 1];
    bool seeded = false;
    for (size_t u = 0; u < n; ++u) {
      if (!std::isfinite(prev[u])) continue;
      for (int32_t a : g.out[u]) {
        const ExpandedArc& arc = g.arcs[a];
        if (arc.kind != ArcKind::Charging) continue;
        double nd = prev[u] + arc_cost[a];
        if (nd < dist[arc.head] - 1e-15) {
          dist[arc.head] = nd;
          pred[arc.head] = a;
          seeded = true;
        }
      }
    }
    if (!seeded) break;
    relax_roads_within_layer(g, arc_cost, dist, pred);

    bool improved = false;
    for (size_t u = 0; u < n; ++u) {
      if (dist[u] < best[u] - 1e-12) {
        best[u] = dist[u];
        improved = true;
      }
    }
    tree.dist.push_back(std::move(dist));
    tree.pred.push_back(std::move(pred));
    if (!improved) break;
  }
  return tree;
}

std::vector<int32_t> rebuild_arcs(const ExpandedGraph& g,
                                  const LayeredTree& tree, int32_t src,
                                  int32_t node, int32_t layer) {
  std::vector<int32_t> arcs;
  size_t cap = g.nodes.size() * tree.dist.size() + 8;
  while (!(node == src && layer == 0)) {
    if (arcs.size() > cap) {
      throw std::logic_error("pricing predecessor chain does not terminate");
    }
    int32_t a = tree.pred[layer][node];
    if (a < 0) throw std::logic_error("pricing predecessor chain is broken");
    arcs.push_back(a);
    node = g.arcs[a].tail;
    if (g.arcs[a].kind == ArcKind::Charging) --layer;
  }
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace

std::vector<PricedPath> price_paths(
    const Instance& inst, const ExpandedGraph& g,
    const std::vector<std::pair<int32_t, int32_t>>& pairs,
    const MasterSolution& master) {
  std::vector<double> arc_cost(g.arcs.size(), 0.0);
  for (size_t a = 0; a < g.arcs.size(); ++a) {
    const ExpandedArc& arc = g.arcs[a];
    if (arc.kind == ArcKind::Road) {
      arc_cost[a] = std::max(0.0, master.zeta[arc.ref]);
    } else {
      arc_cost[a] = master.gamma_price[arc.ref] * arc.charge_duration;
    }
  }
  int32_t max_charges = 0;
  for (uint8_t o : g.open) max_charges += o ? 1 : 0;

  std::vector<PricedPath> found;
  int32_t cur_origin = -1;
  LayeredTree tree;
  int32_t src = -1;
  for (const auto& [r, s] : pairs) {
    if (r != cur_origin) {
      cur_origin = r;
      src = r < static_cast<int32_t>(g.origin_entry.size())
                ? g.origin_entry[r]
                : -1;
      if (src >= 0) tree = layered_search(g, arc_cost, src, max_charges);
    }
    if (src < 0) continue;

    double best_cost = kInf;
    int32_t best_node = -1, best_layer = -1;
    for (size_t k = 0; k < tree.dist.size(); ++k) {
      for (int32_t n : g.phys_nodes[s]) {
        if (tree.dist[k][n] < best_cost - 1e-15) {
          best_cost = tree.dist[k][n];
          best_node = n;
          best_layer = static_cast<int32_t>(k);
        }
      }
    }
    if (best_node < 0) continue;

    double service_gain = inst.cfg.unmet_weight - master.sigma.at({r, s});
    double rc = best_cost - service_gain;
    if (rc < -kPriceTol) {
      PricedPath p;
      p.origin = r;
      p.dest = s;
      p.arcs = rebuild_arcs(g, tree, src, best_node, best_layer);
      p.reduced_cost = rc;
      found.push_back(std::move(p));
    }
  }
  return found;
}

NodeRelaxation solve_node_relaxation(
    const Instance& inst,
    const std::vector<std::pair<int32_t, int32_t>>& pairs, PathPool& pool,
    const CutPools& cuts, const std::vector<double>& y_lo,
    const std::vector<double>& y_up, const LpBasis* warm,
    LpDeadline deadline) {
  std::vector<uint8_t> mask(inst.candidates.size(), 0);
  for (size_t l = 0; l < mask.size(); ++l) mask[l] = y_up[l] > 0.5 ? 1 : 0;
  ExpandedGraph g = expand_graph(inst, mask);

  NodeRelaxation out;
  LpBasis basis;
  bool have_basis = warm != nullptr;
  if (have_basis) basis = *warm;

  while (true) {
    out.master = solve_master(inst, pairs, pool, cuts, y_lo, y_up,
                              have_basis ? &basis : nullptr, deadline);
    if (!out.master.feasible) {
      out.priced_out = true;
      return out;
    }
    basis = out.master.basis;
    have_basis = true;

    if (out.rounds >= inst.cfg.cg_max_rounds) {
      out.priced_out = false;  // hit the round cap with pricing unfinished
      return out;
    }
    if (deadline != kNoDeadline &&
        std::chrono::steady_clock::now() > deadline) {
      out.priced_out = false;  // out of time with pricing unfinished
      return out;
    }
    ++out.rounds;

    std::vector<PricedPath> priced = price_paths(inst, g, pairs, out.master);
    int added = 0;
    for (const PricedPath& p : priced) {
      ExpandedPath path = make_path(g, p.origin, p.dest, p.arcs);
      auto [idx, inserted] = pool.add(to_column(path),
                                      path_signature(g, p.origin, p.arcs));
      (void)idx;
      if (inserted) ++added;
    }
    out.columns_added += added;
    if (added == 0) {
      // every improving walk is already pooled; LP optimality over the pool
      // then certifies pricing optimality
      out.priced_out = true;
      return out;
    }
  }
}

}  // namespace evplace
