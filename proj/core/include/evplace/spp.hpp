#ifndef EVPLACE_SPP_HPP
#define EVPLACE_SPP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "evplace/expand.hpp"

namespace evplace {

/// Generalized arc costs for routing queries. Both callbacks must return
/// finite non-negative values; label setting relies on it.
struct CostView {
  std::function<double(int32_t link)> road_cost;
  std::function<double(int32_t candidate, double duration)> charge_cost;
};

/// Evaluates a CostView over every arc once (cheaper than per-relaxation
/// callbacks inside the solver loops).
std::vector<double> arc_costs(const ExpandedGraph& g, const CostView& view);

/// Shortest-path tree rooted at one expanded node.
struct LabelTree {
  int32_t source = -1;
  std::vector<double> dist;      // +inf where unreachable
  std::vector<int32_t> pred_arc; // -1 at the source and unreached nodes
};

/// Binary-heap label setting over non-negative arc costs. Ties settle by
/// (cost, node index), so the tree is deterministic.
LabelTree shortest_paths_one_to_all(const ExpandedGraph& g,
                                    const std::vector<double>& cost, int32_t source);
LabelTree shortest_paths_one_to_all(const ExpandedGraph& g, const CostView& view,
                                    int32_t source);

/// Cheapest battery level of `dest_zone` in the tree, or -1 if unreachable.
/// Ties pick the smallest expanded node index.
int32_t best_dest_node(const ExpandedGraph& g, const LabelTree& tree, int32_t dest_zone);

/// Rebuilds the arc chain from the tree; nullopt when the zone is
/// unreachable. dest == origin yields the empty path at cost 0.
std::optional<ExpandedPath> extract_path(const ExpandedGraph& g, const LabelTree& tree,
                                         int32_t origin_zone, int32_t dest_zone);

/// Cost of a path under the given arc costs.
double path_cost(const ExpandedPath& p, const std::vector<double>& cost);

}  // namespace evplace

#endif
