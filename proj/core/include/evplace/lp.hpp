#ifndef EVPLACE_LP_HPP
#define EVPLACE_LP_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evplace {

enum class RowSense { Le, Ge, Eq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpVar {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double obj = 0.0;
};

struct LpRow {
  std::vector<std::pair<int32_t, double>> coeffs;  // (var index, value)
  RowSense sense = RowSense::Le;
  double rhs = 0.0;
};

struct LpModel {
  std::vector<LpVar> vars;
  std::vector<LpRow> rows;

  int32_t add_var(double lower, double upper, double obj);
  int32_t add_row(RowSense sense, double rhs,
                  std::vector<std::pair<int32_t, double>> coeffs = {});
};

/// Basis snapshot for warm starts. Encoding is stable when variables or rows
/// are appended to the model: structural variables keep their index and the
/// slack of row i is stored as -(i + 1).
struct LpBasis {
  std::vector<int32_t> basic;           // one entry per row
  std::vector<uint8_t> var_at_upper;    // nonbasic structurals sitting at upper
  std::vector<uint8_t> slack_at_upper;  // nonbasic slacks sitting at upper
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  std::vector<double> primal;         // structural variables
  std::vector<double> duals;          // per row, d objective / d rhs
  std::vector<double> reduced_costs;  // structural variables
  LpBasis basis;
  int pivots = 0;
};

/// Thrown when the simplex loop hits its pivot cap or the basis cannot be
/// factorised even after rebuilding.
class LpError : public std::runtime_error {
 public:
  explicit LpError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when the solve crosses its deadline; never retried internally.
class LpTimeout : public LpError {
 public:
  explicit LpTimeout(const std::string& msg) : LpError(msg) {}
};

using LpDeadline = std::chrono::steady_clock::time_point;
constexpr LpDeadline kNoDeadline = LpDeadline::max();

/// Two-phase bounded-variable revised simplex, minimisation. Dantzig pricing
/// with a Bland fallback once pivots stall. Duals follow the d obj / d rhs
/// convention: for a minimisation, <= rows get nonpositive duals and >= rows
/// nonnegative ones.
LpSolution solve_lp(const LpModel& model, LpDeadline deadline = kNoDeadline);

/// Same solver seeded with a previous basis. Falls back to a cold start when
/// the basis does not factorise or is primal infeasible for the new model
/// (appended columns keep feasibility; appended rows may not).
LpSolution solve_lp(const LpModel& model, const LpBasis& warm,
                    LpDeadline deadline = kNoDeadline);

/// Human-readable dump of the model, for debugging.
std::string to_lp_text(const LpModel& model);

}  // namespace evplace

#endif
