#ifndef EVPLACE_ORACLE_HPP
#define EVPLACE_ORACLE_HPP

#include <vector>

#include "evplace/mtap.hpp"

namespace evplace {

/// Every budget-feasible design, in lexicographic order of the design string
/// (candidate 0 is the most significant position). Throws when the candidate
/// count exceeds cfg.oracle_max_candidates.
std::vector<std::vector<uint8_t>> enumerate_designs(const Instance& inst);

struct OracleResult {
  std::vector<uint8_t> design;
  double objective = 0.0;
  FlowSolution flow;
  int designs_evaluated = 0;
};

/// Exhaustive reference optimum: evaluates the equilibrium response of every
/// budget-feasible design and keeps the strictly best one, so ties resolve
/// to the lexicographically smallest design.
OracleResult brute_force_optimum(const Instance& inst);

/// Leader objective of one design under its equilibrium response.
double evaluate_design(const Instance& inst, const std::vector<uint8_t>& design);

}  // namespace evplace

#endif
