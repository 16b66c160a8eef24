#ifndef EVPLACE_MASTER_HPP
#define EVPLACE_MASTER_HPP

#include <map>
#include <variant>
#include <vector>

#include "evplace/expand.hpp"
#include "evplace/lp.hpp"
#include "evplace/mtap.hpp"

namespace evplace {

/// One path column of the restricted master. Link traversals are stored as
/// counts because priced columns may revisit a link; charge_hours maps a
/// candidate site to the recharge time spent there.
struct PathColumn {
  int32_t origin = 0;
  int32_t dest = 0;
  std::map<int32_t, int32_t> link_count;
  std::map<int32_t, double> charge_hours;
};

PathColumn to_column(const ExpandedPath& path);

/// Design-independent identity of a path: origin zone followed by
/// (kind, ref) per arc. Two expansions of the same instance assign the same
/// signature to the same physical itinerary.
std::vector<int32_t> path_signature(const ExpandedGraph& g, int32_t origin,
                                    const std::vector<int32_t>& arc_ids);

struct PathPool {
  std::vector<PathColumn> paths;

  /// Returns (index, inserted). A repeated signature returns the existing
  /// index with inserted = false.
  std::pair<int32_t, bool> add(const PathColumn& col,
                               const std::vector<int32_t>& signature);

 private:
  std::map<std::vector<int32_t>, int32_t> index_;
};

/// Tangent eta_l >= slope * x_l + intercept of the link congestion integral,
/// taken at flow x1.
struct OaCut {
  int32_t link = 0;
  double x1 = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

/// No-good style bound from one solved follower response:
///   sum eta + charge_value * sum v
///     <= rhs + sum_{l in support} big_m (1 - y_l) + sum_{l in closed} big_m y_l
/// support holds the stations the response actually charged at, closed the
/// stations shut in the generating design. Opening any station that was
/// closed deactivates the bound, which keeps it valid for designs whose
/// reachable demand exceeds the generating design's.
struct VfCut {
  double rhs = 0.0;
  double big_m = 0.0;
  std::vector<int32_t> support;
  std::vector<int32_t> closed;
};

/// Cuts are kept in insertion order so their rows only ever append to the
/// master LP, which keeps basis snapshots warm-startable.
struct CutPools {
  std::vector<std::variant<OaCut, VfCut>> cuts;

  int32_t num_oa() const;
  int32_t num_vf() const;
};

/// Appends a tangent at x1 unless one within 1e-6 already exists for the
/// link. Returns whether a cut was added.
bool add_oa_cut(CutPools& pools, const Instance& inst, int32_t link,
                double x1);

/// Builds the value-function bound from a solved follower response and
/// appends it unless an equal cut (same support, closed set and rhs within
/// 1e-6) exists. Returns whether a cut was added.
bool add_vf_cut(CutPools& pools, const Instance& inst,
                const FlowSolution& response);

/// Value no optimal follower response can exceed, over every design: caps
/// each link at total demand and each vehicle at one full recharge per
/// station. Used to size value-function big-Ms.
double follower_value_upper_bound(const Instance& inst);

struct MasterSolution {
  bool feasible = false;
  double objective = 0.0;  // includes unmet_weight * total demand
  std::vector<double> y;
  std::vector<double> v;
  std::vector<double> x;
  std::vector<double> eta;
  std::vector<double> h;
  std::map<std::pair<int32_t, int32_t>, double> sigma;  // demand duals, >= 0
  std::vector<double> zeta;                             // link duals, >= 0
  std::vector<double> gamma;        // reported charging duals, <= 0
  std::vector<double> gamma_price;  // both halves of the equality pair
  LpBasis basis;
  int pivots = 0;
};

/// Restricted master over the given path pool and cuts, with station
/// variables boxed into [y_lo, y_up] (node fixing pins both to 0 or 1).
/// `pairs` lists the OD pairs that are servable when every station is open;
/// demand that can never be served is charged through the objective
/// constant.
LpModel build_master_lp(const Instance& inst,
                        const std::vector<std::pair<int32_t, int32_t>>& pairs,
                        const PathPool& pool, const CutPools& cuts,
                        const std::vector<double>& y_lo,
                        const std::vector<double>& y_up);

MasterSolution solve_master(
    const Instance& inst,
    const std::vector<std::pair<int32_t, int32_t>>& pairs,
    const PathPool& pool, const CutPools& cuts,
    const std::vector<double>& y_lo, const std::vector<double>& y_up,
    const LpBasis* warm = nullptr, LpDeadline deadline = kNoDeadline);

}  // namespace evplace

#endif
