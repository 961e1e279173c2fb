#pragma once

// Nash bargaining between the citizen and the bribery network over the bribe
// size. The bargaining objective is
//
//   [U_C(B) - U_O(B)] * (p - p_h) * B,
//
// a downward parabola in B whenever the denominator term k below is positive,
// so the maximizer has the closed form B* = n x A / (2 k) with
//
//   A = P + p (F_O - F_C) + p_h n F_O      (bargaining surplus)
//   k = n x (1 - p_h) + x - p              (bribe-cost slope)

#include <algorithm>
#include <cmath>

#include "briberynet/errors.hpp"
#include "briberynet/golden_section.hpp"
#include "briberynet/model.hpp"

namespace briberynet {

enum class SolveMethod { ClosedForm, NumericalOracle };

struct Equilibrium {
  double bribe = 0.0;
  double citizen_utility = 0.0;
  double network_utility = 0.0;
  SolveMethod method = SolveMethod::ClosedForm;
  bool feasible = false;
};

inline constexpr std::size_t kOracleGridPoints = 10001;
inline constexpr double kOracleTolerance = 1e-9;

inline double bargaining_surplus(const ModelParams& m) {
  return m.payoff + m.detection * (m.officer_fine - m.citizen_fine) +
         m.harassment_detection * m.network_size * m.officer_fine;
}

inline double bribe_cost_slope(const ModelParams& m) {
  const double nx = m.network_size * m.share;
  return nx * (1.0 - m.harassment_detection) + m.share - m.detection;
}

namespace detail {

inline double nash_product(const ModelParams& m, double bribe) {
  const double gap = detail::citizen_utility(m, bribe) - detail::network_utility(m, bribe);
  return gap * (m.detection * bribe - m.harassment_detection * bribe);
}

inline void require_bargaining_domain(const ModelParams& m) {
  if (m.detection - m.harassment_detection <= kSignTolerance)
    throw Error(ErrorKind::DegenerateObjective,
                "p_h >= p makes the bargaining objective identically zero");
}

inline void require_regular_slope(const ModelParams& m) {
  if (std::abs(bribe_cost_slope(m)) <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "denominator n x (1 - p_h) + x - p vanishes");
}

inline Equilibrium evaluate(const ModelParams& m, double bribe, SolveMethod method) {
  Equilibrium e;
  e.bribe = bribe;
  e.citizen_utility = detail::citizen_utility(m, bribe);
  e.network_utility = detail::network_utility(m, bribe);
  e.method = method;
  e.feasible = bribe > kSignTolerance && e.citizen_utility > kSignTolerance &&
               e.network_utility > kSignTolerance && m.share - m.detection > kSignTolerance &&
               m.payoff >= m.reservation_payoff;
  return e;
}

}  // namespace detail

inline double nash_product(const ModelParams& m, double bribe) {
  validate(m);
  require_nonnegative_bribe(bribe);
  return detail::nash_product(m, bribe);
}

/// Closed-form bargaining equilibrium. Utilities come from substituting B*
/// into the citizen and network utility functions. A negative B* is returned
/// as infeasible, never clamped.
inline Equilibrium equilibrium_bribe_closed_form(const ModelParams& m) {
  validate(m);
  detail::require_bargaining_domain(m);
  detail::require_regular_slope(m);
  const double bribe =
      m.network_size * m.share * bargaining_surplus(m) / (2.0 * bribe_cost_slope(m));
  return detail::evaluate(m, bribe, SolveMethod::ClosedForm);
}

/// Upper end of the numerical search: ten times the closed-form bribe when it
/// is positive, else ten times P + n F_O.
inline double default_search_max(const ModelParams& m) {
  validate(m);
  if (m.detection - m.harassment_detection > kSignTolerance &&
      std::abs(bribe_cost_slope(m)) > kSignTolerance) {
    const double closed = equilibrium_bribe_closed_form(m).bribe;
    if (closed > 0.0) return 10.0 * closed;
  }
  const double fallback = 10.0 * (m.payoff + m.network_size * m.officer_fine);
  return fallback > 0.0 ? fallback : 1.0;
}

/// Independent maximization of the bargaining objective on [0, search_max]:
/// a 10,001-point grid scan refined by golden-section search.
inline Equilibrium equilibrium_bribe_numerical(const ModelParams& m, double search_max) {
  validate(m);
  if (!(search_max > 0.0) || !std::isfinite(search_max))
    throw Error(ErrorKind::Domain, "search_max must be positive and finite");
  detail::require_bargaining_domain(m);
  auto objective = [&m](double b) { return detail::nash_product(m, b); };
  const GridMaximum best =
      bracketed_maximize(objective, 0.0, search_max, kOracleGridPoints, kOracleTolerance);
  if (best.index + 2 >= kOracleGridPoints)
    throw Error(ErrorKind::BoundaryHit,
                "maximum lies within one grid step of search_max; enlarge search_max");
  return detail::evaluate(m, best.argmax, SolveMethod::NumericalOracle);
}

inline Equilibrium equilibrium_bribe_numerical(const ModelParams& m) {
  return equilibrium_bribe_numerical(m, default_search_max(m));
}

/// Citizen utility at B* with the harassment award counted as a single fine
/// p_h F_O instead of n fines. It falls short of the substituted value by
/// exactly p_h (n - 1) F_O and is kept only for comparison.
inline double citizen_utility_single_fine_award(const ModelParams& m) {
  validate(m);
  detail::require_bargaining_domain(m);
  detail::require_regular_slope(m);
  const double nx = m.network_size * m.share;
  return m.payoff + m.harassment_detection * m.officer_fine - m.detection * m.citizen_fine -
         nx * (1.0 - m.harassment_detection) * bargaining_surplus(m) /
             (2.0 * bribe_cost_slope(m));
}

}  // namespace briberynet
