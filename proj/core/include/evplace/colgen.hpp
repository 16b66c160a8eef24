#ifndef EVPLACE_COLGEN_HPP
#define EVPLACE_COLGEN_HPP

#include <utility>
#include <vector>

#include "evplace/master.hpp"

namespace evplace {

/// One candidate column found by pricing.
struct PricedPath {
  int32_t origin = 0;
  int32_t dest = 0;
  std::vector<int32_t> arcs;  // in the pricing graph
  double reduced_cost = 0.0;
};

/// Exact pricing over battery-feasible paths, at most one per OD pair.
/// Charging rewards can be negative, so the search runs layer by layer on
/// the number of recharges: within a layer only road arcs (non-negative
/// cost) are relaxed, and charging arcs step to the next layer. Layers stop
/// improving monotonically, which bounds the search at one layer per open
/// station. Paths with reduced cost below -1e-7 are returned.
std::vector<PricedPath> price_paths(
    const Instance& inst, const ExpandedGraph& g,
    const std::vector<std::pair<int32_t, int32_t>>& pairs,
    const MasterSolution& master);

struct NodeRelaxation {
  MasterSolution master;
  bool priced_out = false;  // true when no improving column exists
  int rounds = 0;
  int columns_added = 0;
};

/// Solves the master to pricing optimality for one search node: alternates
/// LP solves (warm started, columns only append) with exact pricing until
/// no column prices out or cfg.cg_max_rounds is hit.
NodeRelaxation solve_node_relaxation(
    const Instance& inst,
    const std::vector<std::pair<int32_t, int32_t>>& pairs, PathPool& pool,
    const CutPools& cuts, const std::vector<double>& y_lo,
    const std::vector<double>& y_up, const LpBasis* warm = nullptr,
    LpDeadline deadline = kNoDeadline);

}  // namespace evplace

#endif
