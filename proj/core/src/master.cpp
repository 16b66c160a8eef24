#include "evplace/master.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evplace {

PathColumn to_column(const ExpandedPath& path) {
  PathColumn col;
  col.origin = path.origin;
  col.dest = path.dest;
  col.link_count = path.link_count;
  col.charge_hours = path.charge_hours;
  return col;
}

std::vector<int32_t> path_signature(const ExpandedGraph& g, int32_t origin,
                                    const std::vector<int32_t>& arc_ids) {
  std::vector<int32_t> sig;
  sig.reserve(1 + 2 * arc_ids.size());
  sig.push_back(origin);
  for (int32_t a : arc_ids) {
    const ExpandedArc& arc = g.arcs[a];
    sig.push_back(arc.kind == ArcKind::Road ? 0 : 1);
    sig.push_back(arc.ref);
  }
  return sig;
}

std::pair<int32_t, bool> PathPool::add(const PathColumn& col,
                                       const std::vector<int32_t>& signature) {
  auto it = index_.find(signature);
  if (it != index_.end()) return {it->second, false};
  int32_t id = static_cast<int32_t>(paths.size());
  paths.push_back(col);
  index_.emplace(signature, id);
  return {id, true};
}

int32_t CutPools::num_oa() const {
  int32_t n = 0;
  for (const auto& c : cuts) {
    if (std::holds_alternative<OaCut>(c)) ++n;
  }
  return n;
}

int32_t CutPools::num_vf() const {
  return static_cast<int32_t>(cuts.size()) - num_oa();
}

bool add_oa_cut(CutPools& pools, const Instance& inst, int32_t link,
                double x1) {
  for (const auto& c : pools.cuts) {
    if (const OaCut* oa = std::get_if<OaCut>(&c)) {
      if (oa->link == link && std::abs(oa->x1 - x1) <= 1e-6) return false;
    }
  }
  const Link& data = inst.net.links[link];
  OaCut cut;
  cut.link = link;
  cut.x1 = x1;
  cut.slope = bpr_time(data, x1);
  cut.intercept = beckmann_integral_link(data, x1) - cut.slope * x1;
  pools.cuts.emplace_back(cut);
  return true;
}

double follower_value_upper_bound(const Instance& inst) {
  double total = inst.demand.total();
  if (total <= 0.0) return 0.0;
  double bound = 0.0;
  for (const Link& l : inst.net.links) {
    bound += beckmann_integral_link(l, total);
  }
  double full_charge = inst.cfg.battery_capacity / inst.cfg.charge_rate;
  bound += inst.cfg.charge_value * total * full_charge *
           static_cast<double>(inst.candidates.size());
  return bound;
}

bool add_vf_cut(CutPools& pools, const Instance& inst,
                const FlowSolution& response) {
  VfCut cut;
  cut.rhs = response.value;
  for (size_t l = 0; l < response.v.size(); ++l) {
    if (response.v[l] > 1e-9) cut.support.push_back(static_cast<int32_t>(l));
  }
  for (size_t l = 0; l < response.open.size(); ++l) {
    if (!response.open[l]) cut.closed.push_back(static_cast<int32_t>(l));
  }
  double ceiling = follower_value_upper_bound(inst);
  cut.big_m = std::max(inst.cfg.vf_kappa * std::max(cut.rhs, 1.0),
                       ceiling - cut.rhs);

  for (const auto& c : pools.cuts) {
    if (const VfCut* vf = std::get_if<VfCut>(&c)) {
      if (vf->support == cut.support && vf->closed == cut.closed &&
          std::abs(vf->rhs - cut.rhs) <= 1e-6) {
        return false;
      }
    }
  }
  pools.cuts.emplace_back(cut);
  return true;
}

LpModel build_master_lp(const Instance& inst,
                        const std::vector<std::pair<int32_t, int32_t>>& pairs,
                        const PathPool& pool, const CutPools& cuts,
                        const std::vector<double>& y_lo,
                        const std::vector<double>& y_up) {
  const int32_t C = static_cast<int32_t>(inst.candidates.size());
  const int32_t L = static_cast<int32_t>(inst.net.links.size());
  const int32_t P = static_cast<int32_t>(pairs.size());
  if (y_lo.size() != static_cast<size_t>(C) ||
      y_up.size() != static_cast<size_t>(C)) {
    throw std::invalid_argument("station bound vectors have the wrong size");
  }

  LpModel lp;
  for (int32_t l = 0; l < C; ++l) lp.add_var(y_lo[l], y_up[l], 0.0);
  for (int32_t l = 0; l < C; ++l) {
    lp.add_var(0.0, std::numeric_limits<double>::infinity(),
               -inst.cfg.charge_price);
  }
  const int32_t x0 = 2 * C;
  const int32_t eta0 = 2 * C + L;
  const int32_t h0 = 2 * C + 2 * L;
  for (int32_t a = 0; a < 2 * L; ++a) {
    lp.add_var(0.0, std::numeric_limits<double>::infinity(), 0.0);
  }
  for (size_t k = 0; k < pool.paths.size(); ++k) {
    lp.add_var(0.0, std::numeric_limits<double>::infinity(),
               -inst.cfg.unmet_weight);
  }

  std::vector<std::pair<int32_t, double>> budget;
  for (int32_t l = 0; l < C; ++l) {
    budget.emplace_back(l, inst.candidates[l].cost);
  }
  lp.add_row(RowSense::Le, inst.cfg.budget, std::move(budget));

  double link_m = inst.linking_big_m();
  for (int32_t l = 0; l < C; ++l) {
    lp.add_row(RowSense::Le, 0.0, {{C + l, 1.0}, {l, -link_m}});
  }
  const int32_t coupling0 = 1 + C;
  for (int32_t a = 0; a < L; ++a) {
    lp.add_row(RowSense::Le, 0.0, {{x0 + a, -1.0}});
  }
  const int32_t demand0 = 1 + C + L;
  std::map<std::pair<int32_t, int32_t>, int32_t> pair_row;
  for (int32_t k = 0; k < P; ++k) {
    double d = inst.demand.at(pairs[k].first, pairs[k].second);
    lp.add_row(RowSense::Le, d);
    pair_row[pairs[k]] = demand0 + k;
  }
  const int32_t charge0 = 1 + C + L + P;
  for (int32_t l = 0; l < C; ++l) {
    lp.add_row(RowSense::Ge, 0.0, {{C + l, -1.0}});
    lp.add_row(RowSense::Le, 0.0, {{C + l, -1.0}});
  }

  for (size_t k = 0; k < pool.paths.size(); ++k) {
    const PathColumn& p = pool.paths[k];
    int32_t hvar = h0 + static_cast<int32_t>(k);
    auto it = pair_row.find({p.origin, p.dest});
    if (it == pair_row.end()) {
      throw std::logic_error("pooled path serves an unknown OD pair");
    }
    lp.rows[it->second].coeffs.emplace_back(hvar, 1.0);
    for (const auto& [link, count] : p.link_count) {
      lp.rows[coupling0 + link].coeffs.emplace_back(
          hvar, static_cast<double>(count));
    }
    for (const auto& [cand, dur] : p.charge_hours) {
      lp.rows[charge0 + 2 * cand].coeffs.emplace_back(hvar, dur);
      lp.rows[charge0 + 2 * cand + 1].coeffs.emplace_back(hvar, dur);
    }
  }

  for (const auto& entry : cuts.cuts) {
    if (const OaCut* oa = std::get_if<OaCut>(&entry)) {
      lp.add_row(RowSense::Le, -oa->intercept,
                 {{x0 + oa->link, oa->slope}, {eta0 + oa->link, -1.0}});
    } else {
      const VfCut& vf = std::get<VfCut>(entry);
      std::vector<std::pair<int32_t, double>> coeffs;
      for (int32_t a = 0; a < L; ++a) coeffs.emplace_back(eta0 + a, 1.0);
      for (int32_t l = 0; l < C; ++l) {
        coeffs.emplace_back(C + l, inst.cfg.charge_value);
      }
      double rhs = vf.rhs;
      for (int32_t l : vf.support) {
        coeffs.emplace_back(l, vf.big_m);
        rhs += vf.big_m;
      }
      for (int32_t l : vf.closed) coeffs.emplace_back(l, -vf.big_m);
      lp.add_row(RowSense::Le, rhs, std::move(coeffs));
    }
  }
  return lp;
}

MasterSolution solve_master(
    const Instance& inst,
    const std::vector<std::pair<int32_t, int32_t>>& pairs,
    const PathPool& pool, const CutPools& cuts,
    const std::vector<double>& y_lo, const std::vector<double>& y_up,
    const LpBasis* warm, LpDeadline deadline) {
  LpModel lp = build_master_lp(inst, pairs, pool, cuts, y_lo, y_up);
  LpSolution sol = warm ? solve_lp(lp, *warm, deadline) : solve_lp(lp, deadline);

  MasterSolution out;
  out.pivots = sol.pivots;
  if (sol.status == LpStatus::Unbounded) {
    throw LpError("master problem is unbounded");
  }
  if (sol.status != LpStatus::Optimal) return out;

  const int32_t C = static_cast<int32_t>(inst.candidates.size());
  const int32_t L = static_cast<int32_t>(inst.net.links.size());
  const int32_t P = static_cast<int32_t>(pairs.size());
  out.feasible = true;
  out.objective = sol.objective + inst.cfg.unmet_weight * inst.demand.total();
  out.basis = sol.basis;

  out.y.assign(sol.primal.begin(), sol.primal.begin() + C);
  out.v.assign(sol.primal.begin() + C, sol.primal.begin() + 2 * C);
  out.x.assign(sol.primal.begin() + 2 * C, sol.primal.begin() + 2 * C + L);
  out.eta.assign(sol.primal.begin() + 2 * C + L,
                 sol.primal.begin() + 2 * C + 2 * L);
  out.h.assign(sol.primal.begin() + 2 * C + 2 * L, sol.primal.end());

  const int32_t coupling0 = 1 + C;
  const int32_t demand0 = 1 + C + L;
  const int32_t charge0 = 1 + C + L + P;
  for (int32_t k = 0; k < P; ++k) {
    out.sigma[pairs[k]] = std::max(0.0, -sol.duals[demand0 + k]);
  }
  out.zeta.resize(L);
  for (int32_t a = 0; a < L; ++a) {
    out.zeta[a] = std::max(0.0, -sol.duals[coupling0 + a]);
  }
  out.gamma.resize(C);
  out.gamma_price.resize(C);
  for (int32_t l = 0; l < C; ++l) {
    double ge = sol.duals[charge0 + 2 * l];
    double le = sol.duals[charge0 + 2 * l + 1];
    out.gamma[l] = std::min(0.0, -ge);
    out.gamma_price[l] = -(ge + le);
  }
  return out;
}

}  // namespace evplace
