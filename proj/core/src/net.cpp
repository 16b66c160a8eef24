#include "evplace/net.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace evplace {

std::string ParseError::format(int line, const std::string& msg) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << msg;
  return os.str();
}

void PhysicalNetwork::validate() const {
  if (num_nodes < 0 || num_zones < 0 || num_zones > num_nodes)
    throw std::invalid_argument("network: zone count exceeds node count");
  for (size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    std::ostringstream at;
    at << "link " << i << " (" << l.tail << "->" << l.head << "): ";
    if (l.tail < 1 || l.tail > num_nodes || l.head < 1 || l.head > num_nodes)
      throw std::invalid_argument(at.str() + "node id out of range");
    if (!(l.capacity > 0.0))
      throw std::invalid_argument(at.str() + "capacity must be positive");
    if (l.t0 < 0.0 || l.length < 0.0 || l.alpha < 0.0)
      throw std::invalid_argument(at.str() + "negative coefficient");
    if (l.beta < 1.0)
      throw std::invalid_argument(at.str() + "beta below 1 breaks convexity");
    if (!std::isfinite(l.t0) || !std::isfinite(l.capacity) ||
        !std::isfinite(l.length) || !std::isfinite(l.alpha) ||
        !std::isfinite(l.beta))
      throw std::invalid_argument(at.str() + "non-finite field");
  }
}

void DemandTable::set(int32_t r, int32_t s, double d) {
  if (d < 0.0 || !std::isfinite(d))
    throw std::invalid_argument("demand must be finite and non-negative");
  if (d == 0.0)
    trips.erase({r, s});
  else
    trips[{r, s}] = d;
}

double DemandTable::total() const {
  double sum = 0.0;
  for (const auto& [od, d] : trips) sum += d;
  return sum;
}

void InstanceConfig::validate() const {
  if (budget < 0.0) throw std::invalid_argument("config: budget < 0");
  if (charge_price < 0.0) throw std::invalid_argument("config: charge_price < 0");
  if (charge_value < 0.0) throw std::invalid_argument("config: charge_value < 0");
  if (unmet_weight < 0.0) throw std::invalid_argument("config: unmet_weight < 0");
  if (!(battery_capacity > 0.0))
    throw std::invalid_argument("config: battery_capacity must be positive");
  if (!(battery_quantum > 0.0))
    throw std::invalid_argument("config: battery_quantum must be positive");
  if (battery_quantum > battery_capacity)
    throw std::invalid_argument("config: battery_quantum exceeds battery_capacity");
  if (!(charge_rate > 0.0))
    throw std::invalid_argument("config: charge_rate must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("config: epsilon < 0");
  if (time_limit < 0.0) throw std::invalid_argument("config: time_limit < 0");
  if (!(fw_tolerance > 0.0))
    throw std::invalid_argument("config: fw_tolerance must be positive");
  if (fw_max_iters < 1) throw std::invalid_argument("config: fw_max_iters < 1");
  if (cg_max_rounds < 1) throw std::invalid_argument("config: cg_max_rounds < 1");
  if (vf_kappa < 0.0) throw std::invalid_argument("config: vf_kappa < 0");
  if (oracle_max_candidates < 0)
    throw std::invalid_argument("config: oracle_max_candidates < 0");
}

void Instance::validate() const {
  net.validate();
  cfg.validate();
  std::set<int32_t> seen;
  for (const Candidate& c : candidates) {
    if (c.node < 1 || c.node > net.num_nodes)
      throw std::invalid_argument("candidate node id out of range");
    if (c.cost < 0.0 || !std::isfinite(c.cost))
      throw std::invalid_argument("candidate cost must be finite and non-negative");
    if (!seen.insert(c.node).second)
      throw std::invalid_argument("duplicate candidate node");
  }
  for (const auto& [od, d] : demand.trips) {
    if (od.first < 1 || od.first > net.num_zones)
      throw std::invalid_argument("demand origin is not a zone");
    if (od.second < 1 || od.second > net.num_zones)
      throw std::invalid_argument("demand destination is not a zone");
    if (d < 0.0) throw std::invalid_argument("negative demand");
  }
}

double Instance::linking_big_m() const {
  if (cfg.big_m > 0.0) return cfg.big_m;
  // Worst conceivable load at one site: every trip recharging from empty.
  double m = demand.total() * (cfg.battery_capacity / cfg.charge_rate);
  return m > 0.0 ? m : 1.0;
}

double bpr_time(const Link& link, double flow) {
  if (flow <= 0.0) return link.t0;
  return link.t0 * (1.0 + link.alpha * std::pow(flow / link.capacity, link.beta));
}

double beckmann_integral_link(const Link& link, double flow) {
  if (flow <= 0.0) return 0.0;
  return link.t0 * (flow + link.alpha * std::pow(flow, link.beta + 1.0) /
                               ((link.beta + 1.0) * std::pow(link.capacity, link.beta)));
}

}  // namespace evplace
