#ifndef EVPLACE_EXPAND_HPP
#define EVPLACE_EXPAND_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evplace/net.hpp"

namespace evplace {

/// A physical node paired with a battery level. Levels live on the grid
/// {0, q, 2q, ..., b_max_eff} and are stored as integer multiples of q.
struct ExpandedNode {
  int32_t phys = 0;   // 1-based physical node id
  int32_t units = 0;  // battery level / quantum
};

enum class ArcKind : uint8_t { Road, Charging };

/// Road arcs copy a physical link between battery levels (head level =
/// tail level - quantized energy). Charging arcs jump to the full level at
/// an open candidate site and carry the refill duration in hours.
struct ExpandedArc {
  ArcKind kind = ArcKind::Road;
  int32_t ref = 0;   // link index (Road) or candidate index (Charging)
  int32_t tail = 0;  // expanded node index
  int32_t head = 0;
  double charge_duration = 0.0;  // hours; 0 for road arcs
};

/// Battery-expanded routing graph for one set of open stations. Nodes are
/// discovered by closure from full-battery origins and open stations, so the
/// node count never exceeds num_nodes * (b_max_eff / q + 1).
struct ExpandedGraph {
  double quantum = 1.0;
  int32_t max_units = 0;  // b_max_eff / q
  std::vector<uint8_t> open;  // per candidate, as built
  std::vector<ExpandedNode> nodes;
  std::vector<ExpandedArc> arcs;
  std::vector<std::vector<int32_t>> out;        // arc ids by tail node
  std::vector<std::vector<int32_t>> phys_nodes; // expanded ids by phys id (1-based)
  std::vector<int32_t> origin_entry;            // (zone, full) node by zone id; -1 absent

  int32_t node_index(int32_t phys, int32_t units) const;
  int32_t num_candidates() const { return static_cast<int32_t>(open.size()); }

 private:
  friend ExpandedGraph expand_graph(const Instance&, const std::vector<uint8_t>&);
  std::map<std::pair<int32_t, int32_t>, int32_t> index_;
};

/// Quantized energy demand of a link: length rounded up to a multiple of q
/// (never understates consumption).
int32_t quantize_energy_units(double length, double quantum);

/// Builds the expansion for the given open set (one flag per candidate,
/// size must match inst.candidates). Seeds are (r, full) for every demand
/// origin r and (site, full) for every open site. Trips start on a full
/// battery; charging always refills to full.
ExpandedGraph expand_graph(const Instance& inst, const std::vector<uint8_t>& open);

/// Effective demand: keeps D_rs when some expanded node of zone s is
/// reachable from (r, full); drops the pair otherwise.
DemandTable reachable_od_pairs(const ExpandedGraph& g, const DemandTable& demand);

/// Aggregates expanded arc flows (vehicles/hour, indexed by arc id) onto
/// physical links and candidate sites. v picks up flow * charge_duration.
void project_solution(const ExpandedGraph& g, const std::vector<double>& arc_flows,
                      std::vector<double>& x_links, std::vector<double>& v_sites,
                      size_t num_links, size_t num_candidates);

/// A routing through the expanded graph from (origin, full) to any battery
/// level at a destination zone. `link_count` is the per-link usage (almost
/// always 0/1) and `charge_hours` the per-candidate refill time.
struct ExpandedPath {
  int32_t origin = 0;
  int32_t dest = 0;
  std::vector<int32_t> arcs;
  std::map<int32_t, int32_t> link_count;
  std::map<int32_t, double> charge_hours;
};

/// Assembles a path from an arc chain, validating chaining and endpoints.
ExpandedPath make_path(const ExpandedGraph& g, int32_t origin_zone, int32_t dest_zone,
                       std::vector<int32_t> arc_ids);

/// Debug dumps for inspection: node rows `index,phys,units` and arc rows
/// `index,kind,ref,tail,head,charge_duration` (kind is road or charge).
std::string expanded_nodes_csv(const ExpandedGraph& g);
std::string expanded_arcs_csv(const ExpandedGraph& g);

}  // namespace evplace

#endif
