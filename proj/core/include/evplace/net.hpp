#ifndef EVPLACE_NET_HPP
#define EVPLACE_NET_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evplace {

/// Thrown by the text-format readers. `line` is 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what_arg)
      : std::runtime_error(format(line, what_arg)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string format(int line, const std::string& msg);
  int line_ = 0;
};

/// Directed road link. `t0` is free-flow travel time (minutes), `capacity`
/// vehicles/hour, `length` doubles as the energy drawn from the battery when
/// the link is traversed. `alpha`/`beta` are the volume-delay coefficients.
struct Link {
  int32_t tail = 0;  // 1-based node id
  int32_t head = 0;
  double t0 = 0.0;
  double capacity = 0.0;
  double length = 0.0;
  double alpha = 0.15;
  double beta = 4.0;
};

/// Candidate charging-station site.
struct Candidate {
  int32_t node = 0;  // 1-based node id
  double cost = 0.0;
};

/// Road network. Nodes are 1..num_nodes; zones (demand endpoints) are
/// 1..num_zones by convention of the interchange format.
struct PhysicalNetwork {
  int32_t num_nodes = 0;
  int32_t num_zones = 0;
  int32_t first_thru_node = 1;
  std::vector<Link> links;

  /// Throws std::invalid_argument on ill-formed data (node ids out of range,
  /// non-positive capacity, negative t0/length/alpha, beta < 1).
  void validate() const;
};

/// Origin-destination trip table. Zero-demand pairs are not stored.
struct DemandTable {
  std::map<std::pair<int32_t, int32_t>, double> trips;

  double at(int32_t r, int32_t s) const {
    auto it = trips.find({r, s});
    return it == trips.end() ? 0.0 : it->second;
  }
  void set(int32_t r, int32_t s, double d);
  double total() const;
};

/// Run parameters. Every field can come from a key=value config file and be
/// overridden by a command-line flag. `big_m <= 0` means "derive from the
/// instance" (total demand times the longest possible recharge).
struct InstanceConfig {
  double budget = 0.0;           // construction budget B
  double charge_price = 1.0;     // operator revenue p per vehicle-hour charged
  double charge_value = 1.0;     // user cost t per vehicle-hour charged
  double unmet_weight = 100.0;   // penalty w per unserved trip
  double battery_capacity = 100.0;  // b_max, in length units
  double battery_quantum = 10.0;    // grid step q; b_max is rounded down to a multiple
  double charge_rate = 60.0;        // energy per hour while charging
  double epsilon = 0.0;             // absolute UB-LB stopping gap
  double big_m = 0.0;               // linking bound for v <= M y; <=0 derives it
  double time_limit = 3600.0;       // seconds
  double fw_tolerance = 1e-5;       // assignment relative-gap target
  int fw_max_iters = 2000;
  int cg_max_rounds = 200;
  double vf_kappa = 10.0;           // cut deactivation scale factor
  int oracle_max_candidates = 22;   // enumeration refuses beyond this

  void validate() const;
};

/// Fully assembled problem instance.
struct Instance {
  PhysicalNetwork net;
  DemandTable demand;
  std::vector<Candidate> candidates;
  InstanceConfig cfg;

  /// Cross-checks candidates against the network and validates all parts.
  void validate() const;
  /// Effective linking bound: cfg.big_m if positive, else derived.
  double linking_big_m() const;
};

/// Volume-delay function t0 * (1 + alpha * (x / capacity)^beta).
double bpr_time(const Link& link, double flow);

/// Closed form of the congestion integral: integral of bpr_time from 0 to x,
/// t0 * (x + alpha * x^(beta+1) / ((beta+1) * capacity^beta)).
double beckmann_integral_link(const Link& link, double flow);

}  // namespace evplace

#endif
