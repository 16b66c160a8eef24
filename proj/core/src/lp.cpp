#include "evplace/lp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <iostream>
#include <sstream>

namespace evplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOptTol = 1e-9;   // reduced cost threshold for entering
constexpr double kFeasTol = 1e-7;  // bound violation accepted as feasible
constexpr double kPivTol = 1e-10;  // smallest usable pivot element
// A pivot must also clear this fraction of the transformed column's largest
// entry. Big-M cut rows push |w| entries to 1e5 and beyond, where roundoff
// alone exceeds kPivTol; pivoting on such noise welds a dependent column
// into the basis and the next refactor finds it singular.
constexpr double kPivRel = 1e-7;
constexpr int kMaxPivots = 20000;
constexpr int kDegenLimit = 60;  // stalled pivots before Bland kicks in
constexpr int kRefactorEvery = 100;

enum class StepResult { Pivoted, Optimal, Unbounded };

// Columns are laid out as [structural | slacks | artificials]. The slack of
// row i has coefficient +1, so its bounds encode the sense: Le gives
// [0, inf), Ge gives (-inf, 0], Eq pins it to zero.
struct Simplex {
  int32_t n = 0;      // structural count
  int32_t m = 0;      // row count
  int32_t ncols = 0;  // structural + slacks + artificials
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<double> lo, up;
  std::vector<double> cost;  // phase-2 objective

  std::vector<int32_t> basic;  // column occupying each basis slot
  std::vector<uint8_t> in_basis;
  std::vector<uint8_t> at_upper;
  Eigen::MatrixXd Binv;
  Eigen::VectorXd xB;

  int pivots = 0;
  int degen = 0;
  bool bland = false;
  int refactor_every = kRefactorEvery;
  LpDeadline deadline = kNoDeadline;

  // power-of-two equilibration applied to the tableau; extract() maps the
  // solution back. row_scale never exceeds 1 so the feasibility tolerance
  // only ever tightens relative to the original row.
  Eigen::VectorXd row_scale;
  std::vector<double> col_scale;

  double nonbasic_val(int32_t j) const {
    if (at_upper[j]) return up[j];
    if (std::isfinite(lo[j])) return lo[j];
    if (std::isfinite(up[j])) return up[j];
    return 0.0;
  }

  void refactor() {
    Eigen::MatrixXd B(m, m);
    for (int32_t i = 0; i < m; ++i) B.col(i) = A.col(basic[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (m > 0 && !lu.isInvertible()) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
      std::cerr << "[refactor] m=" << m << " pivots=" << pivots
                << " every=" << refactor_every << " bland=" << bland
                << " maxabs=" << B.cwiseAbs().maxCoeff()
                << " smin=" << svd.singularValues()(m - 1)
                << " smax=" << svd.singularValues()(0) << "\n";
      throw LpError("basis matrix is singular");
    }
    Binv = lu.inverse();
    recompute_basics();
  }

  void recompute_basics() {
    Eigen::VectorXd rhs = b;
    for (int32_t j = 0; j < ncols; ++j) {
      if (in_basis[j]) continue;
      double v = nonbasic_val(j);
      if (v != 0.0) rhs.noalias() -= A.col(j) * v;
    }
    xB = Binv * rhs;
  }

  double objective_of(const std::vector<double>& c) const {
    double total = 0.0;
    for (int32_t j = 0; j < ncols; ++j) {
      if (!in_basis[j] && c[j] != 0.0) total += c[j] * nonbasic_val(j);
    }
    for (int32_t i = 0; i < m; ++i) total += c[basic[i]] * xB(i);
    return total;
  }

  // Picks the entering column, or -1 at optimality. Returns the move
  // direction through `dir` (+1 leaves a lower bound, -1 an upper one).
  int32_t price(const std::vector<double>& c, int* dir) const {
    Eigen::VectorXd cB(m);
    for (int32_t i = 0; i < m; ++i) cB(i) = c[basic[i]];
    Eigen::VectorXd y = Binv.transpose() * cB;

    int32_t best = -1;
    int best_dir = 0;
    double best_score = kOptTol;
    for (int32_t j = 0; j < ncols; ++j) {
      if (in_basis[j] || lo[j] == up[j]) continue;
      double d = c[j] - A.col(j).dot(y);
      bool lower_ok = at_upper[j] == 0 && std::isfinite(lo[j]);
      bool free_col = !std::isfinite(lo[j]) && !std::isfinite(up[j]);
      int cand_dir = 0;
      double score = 0.0;
      if ((lower_ok || free_col) && d < -best_score) {
        cand_dir = +1;
        score = -d;
      } else if ((at_upper[j] || (!lower_ok && !free_col)) && d > best_score) {
        cand_dir = -1;
        score = d;
      } else if (free_col && d > best_score) {
        cand_dir = -1;
        score = d;
      }
      if (cand_dir == 0) continue;
      if (bland) {
        *dir = cand_dir;
        return j;  // columns scanned in index order
      }
      if (score > best_score) {
        best_score = score;
        best = j;
        best_dir = cand_dir;
      }
    }
    *dir = best_dir;
    return best;
  }

  StepResult step(const std::vector<double>& c) {
    int dir = 0;
    int32_t e = price(c, &dir);
    if (e < 0) return StepResult::Optimal;

    Eigen::VectorXd w = Binv * A.col(e);
    double span = up[e] - lo[e];  // inf unless both bounds finite
    double best_t = std::isfinite(span) ? span : kInf;
    int32_t leave_pos = -1;
    double ptol = kPivTol;
    if (m > 0) ptol = std::max(kPivTol, kPivRel * w.cwiseAbs().maxCoeff());

    // pass 1: tightest ratio among basic variables
    for (int32_t i = 0; i < m; ++i) {
      double delta = dir * w(i);
      double t;
      int32_t k = basic[i];
      if (delta > ptol) {
        if (!std::isfinite(lo[k])) continue;
        t = (xB(i) - lo[k]) / delta;
      } else if (delta < -ptol) {
        if (!std::isfinite(up[k])) continue;
        t = (up[k] - xB(i)) / (-delta);
      } else {
        continue;
      }
      if (t < 0.0) t = 0.0;  // drift past a bound
      if (t < best_t - 1e-12) {
        best_t = t;
        leave_pos = i;
      }
    }
    if (!std::isfinite(best_t)) return StepResult::Unbounded;

    // pass 2: among ties prefer a large pivot element, then a small index;
    // under Bland, the smallest variable index wins outright
    if (leave_pos >= 0) {
      double best_piv = 0.0;
      int32_t best_idx = -1;
      for (int32_t i = 0; i < m; ++i) {
        double delta = dir * w(i);
        double t;
        int32_t k = basic[i];
        if (delta > ptol && std::isfinite(lo[k])) {
          t = (xB(i) - lo[k]) / delta;
        } else if (delta < -ptol && std::isfinite(up[k])) {
          t = (up[k] - xB(i)) / (-delta);
        } else {
          continue;
        }
        if (t < 0.0) t = 0.0;
        if (t > best_t + 1e-12) continue;
        if (bland) {
          if (best_idx < 0 || k < best_idx) {
            best_idx = k;
            leave_pos = i;
          }
        } else {
          double piv = std::abs(w(i));
          if (piv > best_piv + 1e-12 ||
              (piv > best_piv - 1e-12 && (best_idx < 0 || k < best_idx))) {
            best_piv = piv;
            best_idx = k;
            leave_pos = i;
          }
        }
      }
    }

    if (leave_pos < 0) {
      // the entering column hits its opposite bound first
      xB.noalias() -= best_t * dir * w;
      at_upper[e] = at_upper[e] ? 0 : 1;
      ++pivots;
      degen = 0;
      return StepResult::Pivoted;
    }

    double enter_val = nonbasic_val(e) + dir * best_t;
    int32_t leaving = basic[leave_pos];
    double delta_p = dir * w(leave_pos);

    xB.noalias() -= best_t * dir * w;
    xB(leave_pos) = enter_val;
    at_upper[leaving] = delta_p < 0.0 ? 1 : 0;
    if (!std::isfinite(up[leaving])) at_upper[leaving] = 0;
    in_basis[leaving] = 0;
    in_basis[e] = 1;
    at_upper[e] = 0;
    basic[leave_pos] = e;

    Eigen::RowVectorXd prow = Binv.row(leave_pos) / w(leave_pos);
    Binv.noalias() -= w * prow;
    Binv.row(leave_pos) = prow;

    ++pivots;
    degen = best_t <= 1e-12 ? degen + 1 : 0;
    if (degen > kDegenLimit) bland = true;
    return StepResult::Pivoted;
  }

  LpStatus run(const std::vector<double>& c) {
    int started_at = pivots;
    int iters = 0;
    while (true) {
      if (pivots - started_at > kMaxPivots) {
        throw LpError("pivot limit exceeded");
      }
      if ((++iters & 15) == 0 && deadline != kNoDeadline &&
          std::chrono::steady_clock::now() > deadline) {
        throw LpTimeout("simplex crossed its deadline");
      }
      if (pivots > 0 && pivots % refactor_every == 0) refactor();
      StepResult r = step(c);
      if (r == StepResult::Optimal) return LpStatus::Optimal;
      if (r == StepResult::Unbounded) return LpStatus::Unbounded;
    }
  }
};

// Swaps `entering` into basis slot p in place of `leaving` without moving the
// primal point (a zero-length pivot); w must be Binv * A.col(entering).
void in_place_pivot(Simplex& s, int32_t p, const Eigen::VectorXd& w,
                    int32_t entering, int32_t leaving) {
  s.in_basis[leaving] = 0;
  s.at_upper[leaving] = 0;
  s.in_basis[entering] = 1;
  s.at_upper[entering] = 0;
  s.basic[p] = entering;
  Eigen::RowVectorXd prow = s.Binv.row(p) / w(p);
  s.Binv.noalias() -= w * prow;
  s.Binv.row(p) = prow;
}

void validate_model(const LpModel& model) {
  for (const auto& v : model.vars) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.obj)) {
      throw std::invalid_argument("variable with NaN bound or infinite cost");
    }
    if (v.lower > v.upper) {
      throw std::invalid_argument("variable lower bound exceeds upper bound");
    }
  }
  for (const auto& r : model.rows) {
    if (!std::isfinite(r.rhs)) {
      throw std::invalid_argument("row with non-finite right-hand side");
    }
    for (const auto& [j, val] : r.coeffs) {
      if (j < 0 || j >= static_cast<int32_t>(model.vars.size())) {
        throw std::invalid_argument("row references an unknown variable");
      }
      if (!std::isfinite(val)) {
        throw std::invalid_argument("row with non-finite coefficient");
      }
    }
  }
}

// Fills everything except the basis itself.
Simplex build_tableau(const LpModel& model, int32_t extra_cols) {
  Simplex s;
  s.n = static_cast<int32_t>(model.vars.size());
  s.m = static_cast<int32_t>(model.rows.size());
  s.ncols = s.n + s.m + extra_cols;
  s.A = Eigen::MatrixXd::Zero(s.m, s.ncols);
  s.b = Eigen::VectorXd::Zero(s.m);
  s.lo.assign(s.ncols, 0.0);
  s.up.assign(s.ncols, 0.0);
  s.cost.assign(s.ncols, 0.0);

  for (int32_t j = 0; j < s.n; ++j) {
    s.lo[j] = model.vars[j].lower;
    s.up[j] = model.vars[j].upper;
    s.cost[j] = model.vars[j].obj;
  }
  for (int32_t i = 0; i < s.m; ++i) {
    const LpRow& row = model.rows[i];
    for (const auto& [j, val] : row.coeffs) s.A(i, j) += val;
    s.b(i) = row.rhs;
    int32_t sj = s.n + i;
    s.A(i, sj) = 1.0;
    switch (row.sense) {
      case RowSense::Le:
        s.lo[sj] = 0.0;
        s.up[sj] = kInf;
        break;
      case RowSense::Ge:
        s.lo[sj] = -kInf;
        s.up[sj] = 0.0;
        break;
      case RowSense::Eq:
        s.lo[sj] = 0.0;
        s.up[sj] = 0.0;
        break;
    }
  }
  // Equilibrate the structural block with power-of-two scales: big-M cut
  // rows otherwise mix coefficients of order 1e5 with unit rows and every
  // basis drawn from them is born ill-conditioned. Powers of two keep the
  // scaled coefficients exact.
  s.row_scale = Eigen::VectorXd::Ones(s.m);
  s.col_scale.assign(s.ncols, 1.0);
  auto equalize = [](double mx) { return std::exp2(-std::round(std::log2(mx))); };
  for (int pass = 0; pass < 2; ++pass) {
    for (int32_t i = 0; i < s.m; ++i) {
      double mx = 0.0;
      for (int32_t j = 0; j < s.n; ++j) {
        mx = std::max(mx, std::abs(s.A(i, j)) * s.row_scale(i) * s.col_scale[j]);
      }
      if (mx > 0.0) {
        s.row_scale(i) = std::min(1.0, s.row_scale(i) * equalize(mx));
      }
    }
    for (int32_t j = 0; j < s.n; ++j) {
      double mx = 0.0;
      for (int32_t i = 0; i < s.m; ++i) {
        mx = std::max(mx, std::abs(s.A(i, j)) * s.row_scale(i) * s.col_scale[j]);
      }
      if (mx > 0.0) s.col_scale[j] *= equalize(mx);
    }
  }
  for (int32_t i = 0; i < s.m; ++i) {
    for (int32_t j = 0; j < s.n; ++j) {
      if (s.A(i, j) != 0.0) s.A(i, j) *= s.row_scale(i) * s.col_scale[j];
    }
    s.b(i) *= s.row_scale(i);
  }
  for (int32_t j = 0; j < s.n; ++j) {
    s.lo[j] /= s.col_scale[j];
    s.up[j] /= s.col_scale[j];
    s.cost[j] *= s.col_scale[j];
  }

  s.in_basis.assign(s.ncols, 0);
  s.at_upper.assign(s.ncols, 0);
  s.basic.assign(s.m, -1);
  return s;
}

LpSolution extract(Simplex& s, LpStatus status) {
  LpSolution sol;
  sol.status = status;
  sol.pivots = s.pivots;
  if (status != LpStatus::Optimal) {
    sol.objective = status == LpStatus::Infeasible ? kInf : -kInf;
    return sol;
  }
  sol.objective = s.objective_of(s.cost);
  sol.primal.resize(s.n);
  for (int32_t j = 0; j < s.n; ++j) {
    sol.primal[j] = s.in_basis[j] ? 0.0 : s.nonbasic_val(j);
  }
  for (int32_t i = 0; i < s.m; ++i) {
    if (s.basic[i] < s.n) sol.primal[s.basic[i]] = s.xB(i);
  }
  for (int32_t j = 0; j < s.n; ++j) sol.primal[j] *= s.col_scale[j];

  Eigen::VectorXd cB(s.m);
  for (int32_t i = 0; i < s.m; ++i) cB(i) = s.cost[s.basic[i]];
  Eigen::VectorXd y = s.Binv.transpose() * cB;
  sol.duals.assign(s.m, 0.0);
  for (int32_t i = 0; i < s.m; ++i) sol.duals[i] = y(i) * s.row_scale(i);
  sol.reduced_costs.resize(s.n);
  for (int32_t j = 0; j < s.n; ++j) {
    sol.reduced_costs[j] = (s.cost[j] - s.A.col(j).dot(y)) / s.col_scale[j];
  }

  sol.basis.basic.resize(s.m);
  for (int32_t i = 0; i < s.m; ++i) {
    int32_t k = s.basic[i];
    if (k < s.n) {
      sol.basis.basic[i] = k;
    } else if (k < s.n + s.m) {
      sol.basis.basic[i] = -(k - s.n + 1);
    } else {
      // leftover artificial of a redundant row; warm starts from this
      // encoding fail the factorisation check and fall back to cold
      sol.basis.basic[i] = -(k - s.n - s.m + 1);
    }
  }
  sol.basis.var_at_upper.assign(s.n, 0);
  sol.basis.slack_at_upper.assign(s.m, 0);
  for (int32_t j = 0; j < s.n; ++j) {
    if (!s.in_basis[j]) sol.basis.var_at_upper[j] = s.at_upper[j];
  }
  for (int32_t i = 0; i < s.m; ++i) {
    if (!s.in_basis[s.n + i]) sol.basis.slack_at_upper[i] = s.at_upper[s.n + i];
  }
  return sol;
}

LpSolution solve_cold_attempt(const LpModel& model, bool safe,
                              LpDeadline deadline) {
  validate_model(model);
  int32_t n = static_cast<int32_t>(model.vars.size());
  int32_t m = static_cast<int32_t>(model.rows.size());

  // residual of each row at the all-nonbasic point decides who needs an
  // artificial column
  std::vector<double> val(n);
  for (int32_t j = 0; j < n; ++j) {
    const LpVar& v = model.vars[j];
    val[j] = std::isfinite(v.lower) ? v.lower
             : std::isfinite(v.upper) ? v.upper
                                      : 0.0;
  }
  std::vector<double> resid(m, 0.0);
  for (int32_t i = 0; i < m; ++i) {
    double ax = 0.0;
    for (const auto& [j, coeff] : model.rows[i].coeffs) ax += coeff * val[j];
    resid[i] = model.rows[i].rhs - ax;
  }

  auto slack_bounds = [&](int32_t i) -> std::pair<double, double> {
    switch (model.rows[i].sense) {
      case RowSense::Le: return {0.0, kInf};
      case RowSense::Ge: return {-kInf, 0.0};
      default: return {0.0, 0.0};
    }
  };
  std::vector<int32_t> art_row;
  for (int32_t i = 0; i < m; ++i) {
    auto [slo, sup] = slack_bounds(i);
    if (resid[i] < slo - kFeasTol || resid[i] > sup + kFeasTol) {
      art_row.push_back(i);
    }
  }

  Simplex s = build_tableau(model, static_cast<int32_t>(art_row.size()));
  s.deadline = deadline;
  if (safe) {
    // frequent (not per-pivot: the rebuild is O(m^3)) refactorisation plus
    // Bland's rule, trading speed for verified bases
    s.refactor_every = 8;
    s.bland = true;
  }
  std::vector<double> phase1(s.ncols, 0.0);
  for (size_t k = 0; k < art_row.size(); ++k) {
    int32_t i = art_row[k];
    int32_t aj = s.n + s.m + static_cast<int32_t>(k);
    auto [slo, sup] = slack_bounds(i);
    double clamped = std::min(std::max(resid[i], slo), sup);
    double gap = resid[i] - clamped;
    s.A(i, aj) = gap >= 0.0 ? 1.0 : -1.0;
    s.lo[aj] = 0.0;
    s.up[aj] = kInf;
    phase1[aj] = 1.0;
    s.at_upper[s.n + i] = (clamped == sup && std::isfinite(sup) &&
                           !(clamped == slo))
                              ? 1
                              : 0;
    s.basic[i] = aj;
    s.in_basis[aj] = 1;
  }
  for (int32_t i = 0; i < s.m; ++i) {
    if (s.basic[i] < 0) {
      s.basic[i] = s.n + i;
      s.in_basis[s.n + i] = 1;
    }
  }
  s.refactor();

  if (!art_row.empty()) {
    LpStatus st = s.run(phase1);
    if (st == LpStatus::Unbounded) {
      throw LpError("phase one reported an unbounded problem");
    }
    if (s.objective_of(phase1) > 1e-7) {
      return extract(s, LpStatus::Infeasible);
    }
    // push artificials still parked in the basis out through any usable
    // column; a row with no such column is redundant and keeps its
    // artificial pinned to zero
    for (int32_t p = 0; p < s.m; ++p) {
      if (s.basic[p] < s.n + s.m) continue;
      Eigen::RowVectorXd rho = s.Binv.row(p);
      int32_t found = -1;
      Eigen::VectorXd w;
      for (int32_t j = 0; j < s.n + s.m; ++j) {
        if (s.in_basis[j]) continue;
        if (std::abs(rho.dot(s.A.col(j))) <= 1e-9) continue;
        // the projection clears the screen; verify against the full
        // transformed column so roundoff on big-M rows cannot pivot a
        // dependent column into the basis
        w = s.Binv * s.A.col(j);
        if (std::abs(w(p)) >
            std::max(kPivTol, kPivRel * w.cwiseAbs().maxCoeff())) {
          found = j;
          break;
        }
      }
      if (found < 0) continue;
      int32_t art = s.basic[p];
      s.xB(p) = s.nonbasic_val(found);
      in_place_pivot(s, p, w, found, art);
    }
    for (size_t k = 0; k < art_row.size(); ++k) {
      int32_t aj = s.n + s.m + static_cast<int32_t>(k);
      s.up[aj] = 0.0;
    }
  }

  LpStatus st = s.run(s.cost);
  return extract(s, st);
}

// Product-form updates between refactorisations can drift far enough on
// degenerate problems that a later refactor finds the basis singular. The
// retry lane refactors after every pivot and uses Bland's rule throughout,
// trading speed for a basis that is verified at each step.
LpSolution solve_cold(const LpModel& model, LpDeadline deadline) {
  try {
    return solve_cold_attempt(model, false, deadline);
  } catch (const LpTimeout&) {
    throw;
  } catch (const LpError&) {
    return solve_cold_attempt(model, true, deadline);
  }
}

}  // namespace

int32_t LpModel::add_var(double lower, double upper, double obj) {
  vars.push_back(LpVar{lower, upper, obj});
  return static_cast<int32_t>(vars.size()) - 1;
}

int32_t LpModel::add_row(RowSense sense, double rhs,
                         std::vector<std::pair<int32_t, double>> coeffs) {
  rows.push_back(LpRow{std::move(coeffs), sense, rhs});
  return static_cast<int32_t>(rows.size()) - 1;
}

LpSolution solve_lp(const LpModel& model, LpDeadline deadline) {
  return solve_cold(model, deadline);
}

LpSolution solve_lp(const LpModel& model, const LpBasis& warm,
                    LpDeadline deadline) {
  validate_model(model);
  int32_t n = static_cast<int32_t>(model.vars.size());
  int32_t m = static_cast<int32_t>(model.rows.size());
  if (warm.basic.size() > static_cast<size_t>(m) ||
      warm.var_at_upper.size() > static_cast<size_t>(n) ||
      warm.slack_at_upper.size() > static_cast<size_t>(m)) {
    return solve_cold(model, deadline);
  }

  Simplex s = build_tableau(model, 0);
  s.deadline = deadline;
  std::vector<uint8_t> taken(s.ncols, 0);
  std::vector<int32_t> decoded;
  decoded.reserve(m);
  for (int32_t enc : warm.basic) {
    int32_t j;
    if (enc >= 0) {
      if (enc >= n) return solve_cold(model, deadline);
      j = enc;
    } else {
      int32_t row = -enc - 1;
      if (row >= m) return solve_cold(model, deadline);
      j = s.n + row;
    }
    if (taken[j]) return solve_cold(model, deadline);
    taken[j] = 1;
    decoded.push_back(j);
  }
  // rows appended since the snapshot bring their own slacks into the basis
  for (int32_t i = static_cast<int32_t>(warm.basic.size()); i < m; ++i) {
    int32_t j = s.n + i;
    if (taken[j]) return solve_cold(model, deadline);
    taken[j] = 1;
    decoded.push_back(j);
  }
  if (static_cast<int32_t>(decoded.size()) != m) return solve_cold(model, deadline);

  for (int32_t i = 0; i < m; ++i) {
    s.basic[i] = decoded[i];
    s.in_basis[decoded[i]] = 1;
  }
  for (size_t j = 0; j < warm.var_at_upper.size(); ++j) {
    if (warm.var_at_upper[j] && !s.in_basis[j] && std::isfinite(s.up[j])) {
      s.at_upper[j] = 1;
    }
  }
  for (size_t i = 0; i < warm.slack_at_upper.size(); ++i) {
    int32_t j = s.n + static_cast<int32_t>(i);
    if (warm.slack_at_upper[i] && !s.in_basis[j] && std::isfinite(s.up[j])) {
      s.at_upper[j] = 1;
    }
  }

  try {
    s.refactor();
  } catch (const LpError&) {
    return solve_cold(model, deadline);
  }
  for (int32_t i = 0; i < m; ++i) {
    int32_t k = s.basic[i];
    if (s.xB(i) < s.lo[k] - kFeasTol || s.xB(i) > s.up[k] + kFeasTol) {
      return solve_cold(model, deadline);
    }
  }

  try {
    LpStatus st = s.run(s.cost);
    return extract(s, st);
  } catch (const LpTimeout&) {
    throw;
  } catch (const LpError&) {
    // mid-run factorisation failure from the inherited basis: start over
    return solve_cold(model, deadline);
  }
}

std::string to_lp_text(const LpModel& model) {
  std::ostringstream out;
  out << "min";
  for (size_t j = 0; j < model.vars.size(); ++j) {
    if (model.vars[j].obj != 0.0) {
      out << " " << (model.vars[j].obj >= 0 ? "+" : "") << model.vars[j].obj
          << " x" << j;
    }
  }
  out << "\n";
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const LpRow& r = model.rows[i];
    out << "r" << i << ":";
    for (const auto& [j, val] : r.coeffs) {
      out << " " << (val >= 0 ? "+" : "") << val << " x" << j;
    }
    out << (r.sense == RowSense::Le   ? " <= "
            : r.sense == RowSense::Ge ? " >= "
                                      : " = ")
        << r.rhs << "\n";
  }
  for (size_t j = 0; j < model.vars.size(); ++j) {
    out << model.vars[j].lower << " <= x" << j << " <= " << model.vars[j].upper
        << "\n";
  }
  return out.str();
}

}  // namespace evplace
