#ifndef EVPLACE_CLI_HPP
#define EVPLACE_CLI_HPP

#include <string>
#include <vector>

#include "evplace/bpc.hpp"

namespace evplace {

/// Search trace as CSV, one row per explored node. Columns:
/// node_index,node_lb,global_lb,global_ub,gap_pct,num_paths,num_oa_cuts,
/// num_vf_cuts,phase_seconds
std::string trace_to_csv(const std::vector<TraceRow>& trace);

std::string design_to_string(const std::vector<uint8_t>& design);

/// Inverse of design_to_string; throws std::invalid_argument on anything but
/// [01]* of the expected length (pass -1 to skip the length check).
std::vector<uint8_t> design_from_string(const std::string& text,
                                        int expected_size = -1);

/// Entry point behind the command-line tool: parses flags, loads the
/// instance, runs the requested mode (bpc, oracle or mtap) and writes
/// result.json plus mode-specific files into --out. Returns the process
/// exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace evplace

#endif
