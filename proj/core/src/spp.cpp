#include "evplace/spp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace evplace {

std::vector<double> arc_costs(const ExpandedGraph& g, const CostView& view) {
  std::vector<double> cost(g.arcs.size());
  for (size_t a = 0; a < g.arcs.size(); ++a) {
    const ExpandedArc& arc = g.arcs[a];
    cost[a] = arc.kind == ArcKind::Road ? view.road_cost(arc.ref)
                                        : view.charge_cost(arc.ref, arc.charge_duration);
  }
  return cost;
}

LabelTree shortest_paths_one_to_all(const ExpandedGraph& g,
                                    const std::vector<double>& cost, int32_t source) {
  if (cost.size() != g.arcs.size())
    throw std::invalid_argument("arc cost vector does not match arc count");
  for (double c : cost)
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("label setting requires finite non-negative costs");
  if (source < 0 || source >= static_cast<int32_t>(g.nodes.size()))
    throw std::invalid_argument("source node out of range");

  constexpr double inf = std::numeric_limits<double>::infinity();
  LabelTree tree;
  tree.source = source;
  tree.dist.assign(g.nodes.size(), inf);
  tree.pred_arc.assign(g.nodes.size(), -1);

  using Entry = std::pair<double, int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  tree.dist[source] = 0.0;
  heap.push({0.0, source});
  std::vector<uint8_t> settled(g.nodes.size(), 0);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    for (int32_t a : g.out[u]) {
      int32_t h = g.arcs[a].head;
      double nd = d + cost[a];
      if (nd < tree.dist[h]) {
        tree.dist[h] = nd;
        tree.pred_arc[h] = a;
        heap.push({nd, h});
      }
    }
  }
  return tree;
}

LabelTree shortest_paths_one_to_all(const ExpandedGraph& g, const CostView& view,
                                    int32_t source) {
  return shortest_paths_one_to_all(g, arc_costs(g, view), source);
}

int32_t best_dest_node(const ExpandedGraph& g, const LabelTree& tree, int32_t dest_zone) {
  if (dest_zone < 1 || dest_zone >= static_cast<int32_t>(g.phys_nodes.size())) return -1;
  int32_t best = -1;
  for (int32_t id : g.phys_nodes[dest_zone]) {
    if (!std::isfinite(tree.dist[id])) continue;
    if (best < 0 || tree.dist[id] < tree.dist[best] ||
        (tree.dist[id] == tree.dist[best] && id < best))
      best = id;
  }
  return best;
}

std::optional<ExpandedPath> extract_path(const ExpandedGraph& g, const LabelTree& tree,
                                         int32_t origin_zone, int32_t dest_zone) {
  int32_t node = best_dest_node(g, tree, dest_zone);
  if (node < 0) return std::nullopt;
  std::vector<int32_t> chain;
  while (node != tree.source) {
    int32_t a = tree.pred_arc[node];
    if (a < 0) return std::nullopt;  // node is seeded but not the query source
    chain.push_back(a);
    node = g.arcs[a].tail;
  }
  std::reverse(chain.begin(), chain.end());
  return make_path(g, origin_zone, dest_zone, std::move(chain));
}

double path_cost(const ExpandedPath& p, const std::vector<double>& cost) {
  double c = 0.0;
  for (int32_t a : p.arcs) c += cost[a];
  return c;
}

}  // namespace evplace
