#include "evplace/expand.hpp"

#include <cmath>
#include <deque>
#include <iomanip>
#include <set>
#include <sstream>

namespace evplace {

int32_t ExpandedGraph::node_index(int32_t phys, int32_t units) const {
  auto it = index_.find({phys, units});
  return it == index_.end() ? -1 : it->second;
}

int32_t quantize_energy_units(double length, double quantum) {
  if (length <= 0.0) return 0;
  double u = length / quantum;
  double r = std::ceil(u - 1e-9);  // exact multiples stay put
  return static_cast<int32_t>(r);
}

ExpandedGraph expand_graph(const Instance& inst, const std::vector<uint8_t>& open) {
  if (open.size() != inst.candidates.size())
    throw std::invalid_argument("open flags do not match candidate count");
  ExpandedGraph g;
  g.quantum = inst.cfg.battery_quantum;
  g.max_units = static_cast<int32_t>(
      std::floor(inst.cfg.battery_capacity / g.quantum + 1e-9));
  g.open = open;
  g.phys_nodes.assign(static_cast<size_t>(inst.net.num_nodes) + 1, {});
  g.origin_entry.assign(static_cast<size_t>(inst.net.num_zones) + 1, -1);

  // outgoing links and open-station lookup by physical node
  std::vector<std::vector<int32_t>> links_out(inst.net.num_nodes + 1);
  for (size_t i = 0; i < inst.net.links.size(); ++i)
    links_out[inst.net.links[i].tail].push_back(static_cast<int32_t>(i));
  std::vector<int32_t> station_at(inst.net.num_nodes + 1, -1);
  for (size_t c = 0; c < inst.candidates.size(); ++c)
    if (open[c]) station_at[inst.candidates[c].node] = static_cast<int32_t>(c);

  std::deque<int32_t> queue;
  auto intern = [&](int32_t phys, int32_t units) {
    auto it = g.index_.find({phys, units});
    if (it != g.index_.end()) return it->second;
    int32_t id = static_cast<int32_t>(g.nodes.size());
    g.index_.emplace(std::make_pair(phys, units), id);
    g.nodes.push_back({phys, units});
    g.out.emplace_back();
    g.phys_nodes[phys].push_back(id);
    queue.push_back(id);
    return id;
  };

  // seeds: demand origins on a full battery, then open stations
  std::set<int32_t> origins;
  for (const auto& [od, d] : inst.demand.trips)
    if (d > 0.0) origins.insert(od.first);
  for (int32_t r : origins) g.origin_entry[r] = intern(r, g.max_units);
  for (size_t c = 0; c < inst.candidates.size(); ++c)
    if (open[c]) intern(inst.candidates[c].node, g.max_units);

  while (!queue.empty()) {
    int32_t id = queue.front();
    queue.pop_front();
    ExpandedNode n = g.nodes[id];  // copy: intern() may reallocate
    for (int32_t li : links_out[n.phys]) {
      const Link& l = inst.net.links[li];
      int32_t need = quantize_energy_units(l.length, g.quantum);
      if (need > n.units) continue;
      int32_t head = intern(l.head, n.units - need);
      g.arcs.push_back({ArcKind::Road, li, id, head, 0.0});
      g.out[id].push_back(static_cast<int32_t>(g.arcs.size()) - 1);
    }
    if (station_at[n.phys] >= 0 && n.units < g.max_units) {
      int32_t c = station_at[n.phys];
      double duration =
          (g.max_units - n.units) * g.quantum / inst.cfg.charge_rate;
      int32_t head = intern(n.phys, g.max_units);
      g.arcs.push_back({ArcKind::Charging, c, id, head, duration});
      g.out[id].push_back(static_cast<int32_t>(g.arcs.size()) - 1);
    }
  }
  return g;
}

DemandTable reachable_od_pairs(const ExpandedGraph& g, const DemandTable& demand) {
  DemandTable eff;
  // group destinations by origin so each origin is swept once
  std::map<int32_t, std::vector<std::pair<int32_t, double>>> by_origin;
  for (const auto& [od, d] : demand.trips)
    if (d > 0.0) by_origin[od.first].push_back({od.second, d});

  std::vector<uint8_t> seen(g.nodes.size());
  for (const auto& [r, dests] : by_origin) {
    int32_t src = r < static_cast<int32_t>(g.origin_entry.size()) ? g.origin_entry[r] : -1;
    if (src < 0) continue;
    std::fill(seen.begin(), seen.end(), 0);
    std::deque<int32_t> q{src};
    seen[src] = 1;
    while (!q.empty()) {
      int32_t u = q.front();
      q.pop_front();
      for (int32_t a : g.out[u]) {
        int32_t h = g.arcs[a].head;
        if (!seen[h]) {
          seen[h] = 1;
          q.push_back(h);
        }
      }
    }
    for (auto [s, d] : dests) {
      bool ok = false;
      if (s < static_cast<int32_t>(g.phys_nodes.size()))
        for (int32_t id : g.phys_nodes[s])
          if (seen[id]) {
            ok = true;
            break;
          }
      if (ok) eff.set(r, s, d);
    }
  }
  return eff;
}

void project_solution(const ExpandedGraph& g, const std::vector<double>& arc_flows,
                      std::vector<double>& x_links, std::vector<double>& v_sites,
                      size_t num_links, size_t num_candidates) {
  if (arc_flows.size() != g.arcs.size())
    throw std::invalid_argument("arc flow vector does not match arc count");
  x_links.assign(num_links, 0.0);
  v_sites.assign(num_candidates, 0.0);
  for (size_t a = 0; a < g.arcs.size(); ++a) {
    double f = arc_flows[a];
    if (f == 0.0) continue;
    const ExpandedArc& arc = g.arcs[a];
    if (arc.kind == ArcKind::Road)
      x_links[arc.ref] += f;
    else
      v_sites[arc.ref] += f * arc.charge_duration;
  }
}

ExpandedPath make_path(const ExpandedGraph& g, int32_t origin_zone, int32_t dest_zone,
                       std::vector<int32_t> arc_ids) {
  ExpandedPath p;
  p.origin = origin_zone;
  p.dest = dest_zone;
  int32_t entry = origin_zone < static_cast<int32_t>(g.origin_entry.size())
                      ? g.origin_entry[origin_zone]
                      : -1;
  if (entry < 0) throw std::invalid_argument("origin zone has no entry node");
  int32_t at = entry;
  for (int32_t a : arc_ids) {
    if (a < 0 || a >= static_cast<int32_t>(g.arcs.size()))
      throw std::invalid_argument("arc id out of range");
    const ExpandedArc& arc = g.arcs[a];
    if (arc.tail != at) throw std::invalid_argument("path arcs do not chain");
    if (arc.kind == ArcKind::Road)
      p.link_count[arc.ref] += 1;
    else
      p.charge_hours[arc.ref] += arc.charge_duration;
    at = arc.head;
  }
  if (g.nodes[at].phys != dest_zone)
    throw std::invalid_argument("path does not end at the destination zone");
  p.arcs = std::move(arc_ids);
  return p;
}

std::string expanded_nodes_csv(const ExpandedGraph& g) {
  std::ostringstream out;
  out << "index,phys,units\n";
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    out << n << ',' << g.nodes[n].phys << ',' << g.nodes[n].units << '\n';
  }
  return out.str();
}

std::string expanded_arcs_csv(const ExpandedGraph& g) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "index,kind,ref,tail,head,charge_duration\n";
  for (size_t a = 0; a < g.arcs.size(); ++a) {
    const ExpandedArc& arc = g.arcs[a];
    out << a << ',' << (arc.kind == ArcKind::Road ? "road" : "charge") << ','
        << arc.ref << ',' << arc.tail << ',' << arc.head << ','
        << arc.charge_duration << '\n';
  }
  return out.str();
}

}  // namespace evplace
