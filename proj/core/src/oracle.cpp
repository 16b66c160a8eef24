#include "evplace/oracle.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace evplace {

std::vector<std::vector<uint8_t>> enumerate_designs(const Instance& inst) {
  const int32_t C = static_cast<int32_t>(inst.candidates.size());
  if (C > inst.cfg.oracle_max_candidates) {
    std::ostringstream msg;
    msg << "enumeration over " << C << " candidates exceeds the cap of "
        << inst.cfg.oracle_max_candidates;
    throw std::invalid_argument(msg.str());
  }
  std::vector<std::vector<uint8_t>> designs;
  const int64_t total = int64_t{1} << C;
  for (int64_t mask = 0; mask < total; ++mask) {
    std::vector<uint8_t> d(C, 0);
    double spent = 0.0;
    for (int32_t l = 0; l < C; ++l) {
      if ((mask >> (C - 1 - l)) & 1) {
        d[l] = 1;
        spent += inst.candidates[l].cost;
      }
    }
    if (spent <= inst.cfg.budget + 1e-7) designs.push_back(std::move(d));
  }
  return designs;
}

double evaluate_design(const Instance& inst,
                       const std::vector<uint8_t>& design) {
  FlowSolution flow = solve_mtap(inst, design);
  return upper_level_value(inst, flow);
}

OracleResult brute_force_optimum(const Instance& inst) {
  inst.validate();
  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (const auto& design : enumerate_designs(inst)) {
    FlowSolution flow = solve_mtap(inst, design);
    double obj = upper_level_value(inst, flow);
    ++best.designs_evaluated;
    if (obj < best.objective) {
      best.objective = obj;
      best.design = design;
      best.flow = std::move(flow);
    }
  }
  return best;
}

}  // namespace evplace
