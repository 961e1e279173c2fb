#pragma once

// Aggregate bargaining over a collection period. An officer targets the income
// difference D_r with an incorruptible superior; his kept shares of own and
// forwarded bribes must cover it, giving the budget D_r / x >= own + forwarded.
// Splitting that budget by Nash bargaining yields the own/forwarded ratio
//
//   own = forwarded * [1 - p (1 - x)] / [(1 - 2x)(1 - p)],
//
// and dividing by the equilibrium bribe gives m1, the average minimum number
// of bribes collected per period.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "briberynet/bargaining.hpp"
#include "briberynet/comparative_statics.hpp"
#include "briberynet/errors.hpp"
#include "briberynet/golden_section.hpp"
#include "briberynet/model.hpp"
#include "briberynet/parallel.hpp"

namespace briberynet {

/// How D_r enters the bribe count. AsPrinted uses D_r directly; GrossOfShare
/// uses D_r / x, which is what composing the budget with the split implies.
enum class BudgetConvention { AsPrinted, GrossOfShare };

struct Passthrough {
  double amount = 0.0;
  int rank = 1;  // hops between the collecting officer and this one
};

struct BudgetReport {
  double exact_total = 0.0;       // x * own + x * sum (1-x)^(r-1) B_k
  double linearized_total = 0.0;  // same with weights max(0, 1 - x (r-1))
  double linearization_gap = 0.0; // linearized - exact
  double slack = 0.0;             // D_r - exact_total
  bool satisfied = false;
};

inline BudgetReport budget_check(const ModelParams& m, double income_difference,
                                 std::span<const double> own_bribes,
                                 std::span<const Passthrough> passthrough) {
  validate(m);
  if (!detail::finite_nonnegative(income_difference))
    throw Error(ErrorKind::Domain, "income difference must be finite and >= 0");
  const double x = m.share;
  double own = 0.0;
  for (double b : own_bribes) {
    require_nonnegative_bribe(b);
    own += b;
  }
  double exact = 0.0;
  double linear = 0.0;
  for (const Passthrough& k : passthrough) {
    require_nonnegative_bribe(k.amount);
    if (k.rank < 1) throw Error(ErrorKind::Domain, "pass-through rank must be >= 1");
    exact += std::pow(1.0 - x, k.rank - 1) * k.amount;
    linear += std::max(0.0, 1.0 - x * (k.rank - 1)) * k.amount;
  }
  BudgetReport r;
  r.exact_total = x * own + x * exact;
  r.linearized_total = x * own + x * linear;
  r.linearization_gap = r.linearized_total - r.exact_total;
  r.slack = income_difference - r.exact_total;
  r.satisfied = r.slack >= 0.0;
  return r;
}

/// [1 - p (1 - x)] / [(1 - 2x)(1 - p)]; singular at x = 1/2 and p = 1.
inline double split_ratio(const ModelParams& m) {
  validate(m);
  const double x = m.share;
  const double p = m.detection;
  if (std::abs(1.0 - 2.0 * x) <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "split denominator (1 - 2x) vanishes at x = 1/2");
  if (1.0 - p <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "split denominator (1 - p) vanishes at p = 1");
  return (1.0 - p * (1.0 - x)) / ((1.0 - 2.0 * x) * (1.0 - p));
}

struct SplitResult {
  double own_pool = 0.0;
  bool feasible = false;  // false when x > 1/2 makes the split negative
};

inline SplitResult aggregate_split(const ModelParams& m, double passthrough_agreed) {
  if (!detail::finite_nonnegative(passthrough_agreed))
    throw Error(ErrorKind::Domain, "agreed pass-through pool must be finite and >= 0");
  const double ratio = split_ratio(m);
  return {passthrough_agreed * ratio, ratio >= 0.0};
}

struct NashSplit {
  double oracle_argmax = 0.0;      // numerical maximizer of the budget split product
  double first_order_value = 0.0;  // S/2 + p K / (2 (1 - p)), S = D_r / x
  std::optional<double> ratio_split;  // aggregate_split value, empty when singular
  bool boundary = false;              // maximizer sits on an end of [0, S]
};

/// Maximizes (S - b)(b - p (b + K)) over b in [0, S] with S = D_r / x and K
/// the agreed pass-through pool, and reports it next to the ratio split.
inline NashSplit nash_split_oracle(const ModelParams& m, double income_difference,
                                   double pool_passthrough) {
  validate(m);
  if (!detail::finite_nonnegative(income_difference))
    throw Error(ErrorKind::Domain, "income difference must be finite and >= 0");
  if (!detail::finite_nonnegative(pool_passthrough))
    throw Error(ErrorKind::Domain, "pass-through pool must be finite and >= 0");
  const double p = m.detection;
  if (1.0 - p <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "split oracle requires p < 1");
  NashSplit out;
  const double budget = income_difference / m.share;
  out.first_order_value = budget / 2.0 + p * pool_passthrough / (2.0 * (1.0 - p));
  try {
    out.ratio_split = aggregate_split(m, pool_passthrough).own_pool;
  } catch (const Error&) {
    out.ratio_split.reset();
  }
  if (budget == 0.0) {
    out.boundary = true;
    return out;
  }
  auto objective = [&](double b) { return (budget - b) * (b - p * (b + pool_passthrough)); };
  const GridMaximum best =
      bracketed_maximize(objective, 0.0, budget, kOracleGridPoints, kOracleTolerance);
  out.oracle_argmax = best.argmax;
  out.boundary = best.index == 0 || best.index + 1 >= kOracleGridPoints;
  return out;
}

/// p + (1 - x)(2 - 3p) and 1 - p (1 - x) combine into the per-bribe factor.
inline double bribe_count_coefficient(const ModelParams& m) {
  validate(m);
  const double x = m.share;
  const double p = m.detection;
  const double denominator = p + (1.0 - x) * (2.0 - 3.0 * p);
  if (denominator <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "bribe-count denominator p + (1-x)(2-3p) is not positive");
  return (1.0 - p * (1.0 - x)) / denominator;
}

inline double bribe_count_m1(const ModelParams& m, double income_difference,
                             BudgetConvention convention = BudgetConvention::AsPrinted) {
  validate(m);
  if (!detail::finite_nonnegative(income_difference))
    throw Error(ErrorKind::Domain, "income difference must be finite and >= 0");
  const double bribe = equilibrium_bribe_closed_form(m).bribe;
  if (bribe <= kSignTolerance)
    throw Error(ErrorKind::Infeasible, "equilibrium bribe is not positive; bribe count undefined");
  const double budget =
      convention == BudgetConvention::AsPrinted ? income_difference : income_difference / m.share;
  return bribe_count_coefficient(m) * budget / bribe;
}

struct AggregateScenario {
  double income_difference = 0.0;
  double m1 = 0.0;
  int m2 = 0;                     // pass-through bribes; an input, not derived
  double pool_own = 0.0;
  double pool_passthrough = 0.0;
  double split_ratio = 0.0;       // pool_own / pool_passthrough
  BudgetConvention budget_convention = BudgetConvention::AsPrinted;
  bool feasible = false;
};

/// Splits the binding budget D_r / x between own and forwarded pools at the
/// bargaining ratio and attaches the bribe count.
inline AggregateScenario solve_aggregate_scenario(const ModelParams& m, double income_difference,
                                                  int passthrough_count,
                                                  BudgetConvention convention = BudgetConvention::AsPrinted) {
  if (passthrough_count < 0) throw Error(ErrorKind::Domain, "pass-through count must be >= 0");
  AggregateScenario s;
  s.income_difference = income_difference;
  s.m2 = passthrough_count;
  s.budget_convention = convention;
  s.m1 = bribe_count_m1(m, income_difference, convention);
  s.split_ratio = split_ratio(m);
  if (std::abs(1.0 + s.split_ratio) <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "split ratio of -1 leaves the budget unallocated");
  const double budget = income_difference / m.share;
  s.pool_passthrough = budget / (1.0 + s.split_ratio);
  s.pool_own = s.split_ratio * s.pool_passthrough;
  s.feasible = s.split_ratio >= 0.0;
  return s;
}

struct CountSweepRow {
  double value = 0.0;
  std::optional<double> m1;
  std::optional<double> bribe;
  bool feasible = false;
  std::optional<ErrorKind> skipped;
};

inline std::vector<CountSweepRow> sweep_m1(const ModelParams& base, SweepAxis axis,
                                           std::span<const double> grid, double income_difference,
                                           BudgetConvention convention = BudgetConvention::AsPrinted,
                                           const SweepOptions& options = {}) {
  detail::check_grid(grid);
  if (!detail::finite_nonnegative(income_difference))
    throw Error(ErrorKind::Domain, "income difference must be finite and >= 0");
  std::vector<CountSweepRow> rows(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        CountSweepRow& row = rows[i];
        row.value = grid[i];
        try {
          const ModelParams m = detail::at_grid_point(base, axis, grid[i], options);
          const Equilibrium e = equilibrium_bribe_closed_form(m);
          row.bribe = e.bribe;
          row.m1 = bribe_count_m1(m, income_difference, convention);
          row.feasible = e.feasible;
        } catch (const Error& err) {
          row.skipped = err.kind();
          row.m1.reset();
        }
      },
      options.threads);
  return rows;
}

}  // namespace briberynet
