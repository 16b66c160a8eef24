#ifndef EVPLACE_TNTP_HPP
#define EVPLACE_TNTP_HPP

#include <string>
#include <vector>

#include "evplace/net.hpp"

namespace evplace {

/// Reads the classic interchange network format: angle-bracket metadata
/// (<NUMBER OF ZONES>, <NUMBER OF NODES>, <FIRST THRU NODE>, <NUMBER OF
/// LINKS>, <END OF METADATA>), `~` comments, then one link per row with
/// columns init term capacity length free_flow_time b power speed toll type.
/// `b` and `power` map to Link::alpha and Link::beta. Tolerates arbitrary
/// whitespace and a trailing `;`. Throws ParseError with the offending line.
PhysicalNetwork parse_tntp_net(const std::string& text);

/// Writes a network back out in the same row format. parse(serialize(n))
/// reproduces n exactly for round-trippable values.
std::string serialize_tntp_net(const PhysicalNetwork& net);

/// Reads the trip-table format: metadata block, then `Origin r` headers
/// followed by `dest : volume;` entries. Zero volumes are dropped. When the
/// metadata declares a zone count, origins and destinations are checked
/// against it. Throws ParseError on malformed rows or negative volumes.
DemandTable parse_tntp_trips(const std::string& text);

/// Reads candidate sites from CSV with the exact header `node_id,cost`.
std::vector<Candidate> parse_candidates_csv(const std::string& text);

/// Applies `key = value` lines (# comments, blank lines ignored) onto `cfg`.
/// Unknown keys are an error; see docs/formats.md for the key list.
void apply_config_text(const std::string& text, InstanceConfig& cfg);

/// Convenience loader: reads the four files (config path may be empty) and
/// assembles a validated Instance.
Instance load_instance(const std::string& net_path, const std::string& trips_path,
                       const std::string& candidates_path, const std::string& config_path);

/// Whole-file slurp used by the loader and the CLI; throws std::runtime_error
/// when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace evplace

#endif
