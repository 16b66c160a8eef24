#ifndef EVPLACE_BPC_HPP
#define EVPLACE_BPC_HPP

#include <vector>

#include "evplace/colgen.hpp"

namespace evplace {

enum class NodeCheck { Infeasible, Fixed, Unfixed };

/// Budget screen for a branching node. fix holds -1 (undecided), 0 (closed)
/// or 1 (open) per candidate. Returns Infeasible when the opened sites
/// already overrun the budget, Fixed when nothing is undecided or the
/// leftover budget cannot afford the cheapest undecided site (those are then
/// forced closed in place), Unfixed otherwise.
NodeCheck check_node(const Instance& inst, std::vector<int8_t>& fix);

/// Station to branch on: the fractional y with the largest charging volume
/// (ties pick the smallest index). With an integral y it falls back to the
/// undecided station with the largest volume; -1 when nothing is undecided.
int32_t select_branch_variable(const MasterSolution& master,
                               const std::vector<int8_t>& fix);

struct TraceRow {
  int node_index = 0;
  double node_lb = 0.0;
  double global_lb = 0.0;
  double global_ub = 0.0;
  double gap_pct = 0.0;
  int num_paths = 0;
  int num_oa_cuts = 0;
  int num_vf_cuts = 0;
  double phase_seconds = 0.0;
};

/// Why a subtree was discarded. Budget: the opened sites alone overrun the
/// budget. Bound: the node bound cleared upper_bound - max(epsilon, 1e-9)
/// (node_lb is +inf when the relaxation was infeasible). Leaf: all stations
/// were decided, so the design was evaluated exactly instead of branched.
struct FathomEvent {
  enum class Reason : uint8_t { Budget, Bound, Leaf };
  Reason reason = Reason::Bound;
  std::vector<int8_t> fix;  // -1 undecided, 0 closed, 1 open
  double node_lb = 0.0;
  double ub_at = 0.0;  // incumbent value when the decision was made
};

enum class BpcStatus { Optimal, TimeLimit };

struct BpcResult {
  BpcStatus status = BpcStatus::Optimal;
  std::vector<uint8_t> best_design;
  FlowSolution best_flow;
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  double gap_pct = 0.0;
  std::vector<TraceRow> trace;
  std::vector<FathomEvent> fathoms;
  PathPool pool;  // final column pool
  CutPools cuts;  // final cut pools

  int nodes_solved = 0;
  int mtap_solves = 0;
  int cg_rounds = 0;
  int columns = 0;
  int oa_cuts = 0;
  int vf_cuts = 0;
  double seconds = 0.0;
};

/// Exact best-first branch and price and cut over station designs. Node
/// bounds come from the priced-out master relaxation; incumbents from
/// rounding probes evaluated by the equilibrium solver (memoised per
/// design); every probe feeds tangent and value-function cuts back into the
/// shared pools. Terminates when the frontier empties or every node clears
/// upper_bound - max(cfg.epsilon, 1e-9), or at cfg.time_limit seconds with
/// status TimeLimit.
BpcResult run_bpc(const Instance& inst);

}  // namespace evplace

#endif
