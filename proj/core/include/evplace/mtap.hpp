#ifndef EVPLACE_MTAP_HPP
#define EVPLACE_MTAP_HPP

#include <map>
#include <vector>

#include "evplace/expand.hpp"

namespace evplace {

/// Equilibrium traffic assignment for one station design.
struct FlowSolution {
  std::vector<uint8_t> open;  // design that was assigned
  std::vector<double> x;      // vehicles/hour per link
  std::vector<double> v;      // vehicle-hours/hour charged per candidate
  std::map<std::pair<int32_t, int32_t>, double> served;  // effective demand routed
  double value = 0.0;    // congestion integral plus charge_value * total charging
  double rel_gap = 0.0;  // last relative optimality gap
  int iterations = 0;
  bool converged = true;
};

/// Congestion integral over links plus the user cost of charging.
double lower_level_value(const Instance& inst, const std::vector<double>& x,
                         const std::vector<double>& v);

/// Leader objective: -charge_price * total charging + unmet_weight * unserved
/// demand (unserved = total demand minus served).
double upper_level_value(const Instance& inst, const FlowSolution& sol);

/// Convex-combinations equilibrium solver on the battery-expanded graph.
/// Infeasible OD pairs are dropped up front; feasible ones are served in
/// full. Stops at cfg.fw_tolerance relative gap or cfg.fw_max_iters (then
/// converged = false). The objective value is checked to be non-increasing
/// every iteration. Closed stations carry exactly zero charging flow.
FlowSolution solve_mtap(const Instance& inst, const std::vector<uint8_t>& open);

}  // namespace evplace

#endif
