#pragma once

// First-order comparative statics of the equilibrium bribe.
//
// The canonical partials are the exact derivatives of B* = n x A / (2k). The
// derivatives in p_h, n and x coincide with the commonly quoted expressions;
// the derivative in p is sometimes quoted with the fine-gap coefficient
// p_h (n - 1) + 1 where differentiation gives n (1 - p_h) + 1. That variant is
// exposed separately and finite differences side with the canonical form.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "briberynet/bargaining.hpp"
#include "briberynet/errors.hpp"
#include "briberynet/model.hpp"
#include "briberynet/parallel.hpp"

namespace briberynet {

namespace detail {

/// Model parameters with a real-valued network size, for differentiation.
struct SmoothParams {
  double payoff, officer_fine, citizen_fine, p, p_h, x, n;

  static SmoothParams from(const ModelParams& m) {
    return {m.payoff, m.officer_fine, m.citizen_fine, m.detection,
            m.harassment_detection, m.share, static_cast<double>(m.network_size)};
  }

  double surplus() const { return payoff + p * (officer_fine - citizen_fine) + p_h * n * officer_fine; }
  double slope() const { return n * x * (1.0 - p_h) + x - p; }
  double bribe() const { return n * x * surplus() / (2.0 * slope()); }
};

inline SmoothParams require_smooth(const ModelParams& m) {
  validate(m);
  const SmoothParams s = SmoothParams::from(m);
  if (std::abs(s.slope()) <= kSignTolerance)
    throw Error(ErrorKind::Singularity, "denominator n x (1 - p_h) + x - p vanishes");
  return s;
}

/// Central difference of B* along one coordinate with step 1e-6 * max(1, |v|).
template <class Member>
double central_difference(SmoothParams s, Member member) {
  const double h = 1e-6 * std::max(1.0, std::abs(s.*member));
  SmoothParams up = s;
  SmoothParams down = s;
  up.*member += h;
  down.*member -= h;
  return (up.bribe() - down.bribe()) / (2.0 * h);
}

}  // namespace detail

inline double partial_wrt_p(const ModelParams& m) {
  const auto s = detail::require_smooth(m);
  const double k = s.slope();
  const double gap = s.officer_fine - s.citizen_fine;
  return (s.n * s.x / 2.0) *
         (s.x * (s.n * (1.0 - s.p_h) + 1.0) * gap + (s.payoff + s.p_h * s.n * s.officer_fine)) /
         (k * k);
}

/// Variant of partial_wrt_p using the coefficient p_h (n - 1) + 1 on the fine
/// gap. Wrong whenever F_O != F_C; kept for deviation reporting.
inline double partial_wrt_p_variant(const ModelParams& m) {
  const auto s = detail::require_smooth(m);
  const double k = s.slope();
  const double gap = s.officer_fine - s.citizen_fine;
  return (s.n * s.x / 2.0) *
         (s.x * (s.p_h * (s.n - 1.0) + 1.0) * gap + (s.payoff + s.p_h * s.n * s.officer_fine)) /
         (k * k);
}

inline double partial_wrt_ph(const ModelParams& m) {
  const auto s = detail::require_smooth(m);
  const double k = s.slope();
  return (s.n * s.n * s.x / 2.0) *
         (s.x * s.p * (s.officer_fine - s.citizen_fine) +
          (s.n * s.x + s.x - s.p) * s.officer_fine + s.x * s.payoff) /
         (k * k);
}

/// Treats the network size as continuous.
inline double partial_wrt_n(const ModelParams& m) {
  const auto s = detail::require_smooth(m);
  const double k = s.slope();
  const double lead = s.x * (s.x - s.p) *
                      (s.payoff + s.p * (s.officer_fine - s.citizen_fine) +
                       2.0 * s.p_h * s.n * s.officer_fine);
  const double harassment = s.p_h * s.n * s.n * s.x * s.x * s.officer_fine * (1.0 - s.p_h);
  return (lead + harassment) / (2.0 * k * k);
}

inline double partial_wrt_x(const ModelParams& m) {
  const auto s = detail::require_smooth(m);
  const double k = s.slope();
  return -s.n * s.p * s.surplus() / (2.0 * k * k);
}

inline double relative_deviation(double estimate, double reference) {
  return std::abs(estimate - reference) / std::max(std::abs(reference), kSignTolerance);
}

struct PartialReport {
  double d_bribe_d_p = 0.0;
  double d_bribe_d_ph = 0.0;
  double d_bribe_d_n = 0.0;
  double d_bribe_d_x = 0.0;
  std::array<double, 4> finite_differences{};  // same order as the fields above
  double max_rel_deviation = 0.0;

  std::array<double, 4> analytic() const { return {d_bribe_d_p, d_bribe_d_ph, d_bribe_d_n, d_bribe_d_x}; }
};

inline PartialReport partial_report(const ModelParams& m) {
  using S = detail::SmoothParams;
  const auto s = detail::require_smooth(m);
  PartialReport r;
  r.d_bribe_d_p = partial_wrt_p(m);
  r.d_bribe_d_ph = partial_wrt_ph(m);
  r.d_bribe_d_n = partial_wrt_n(m);
  r.d_bribe_d_x = partial_wrt_x(m);
  r.finite_differences = {detail::central_difference(s, &S::p), detail::central_difference(s, &S::p_h),
                          detail::central_difference(s, &S::n), detail::central_difference(s, &S::x)};
  const auto exact = r.analytic();
  for (std::size_t i = 0; i < exact.size(); ++i)
    r.max_rel_deviation =
        std::max(r.max_rel_deviation, relative_deviation(r.finite_differences[i], exact[i]));
  return r;
}

/// Central-difference estimate of dB*/dp alone; used to arbitrate between the
/// canonical and variant derivative in p.
inline double finite_difference_wrt_p(const ModelParams& m) {
  return detail::central_difference(detail::require_smooth(m), &detail::SmoothParams::p);
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis { Detection, HarassmentDetection };

struct SweepOptions {
  /// Detection sweeps only: when set, p_h follows the grid as ratio * p
  /// instead of staying at the base value.
  std::optional<double> harassment_ratio;
  unsigned threads = 1;
};

struct BribeSweepRow {
  double value = 0.0;
  std::optional<double> bribe;       // empty when the point was skipped
  bool feasible = false;
  std::optional<ErrorKind> skipped;  // reason the point has no equilibrium
};

namespace detail {

inline void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorKind::Domain, "sweep grid is empty");
  for (double v : grid)
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorKind::Domain, "sweep grid values must be probabilities in [0,1]");
}

inline ModelParams at_grid_point(ModelParams m, SweepAxis axis, double value,
                                 const SweepOptions& options) {
  if (axis == SweepAxis::Detection) {
    m.detection = value;
    if (options.harassment_ratio) m.harassment_detection = *options.harassment_ratio * value;
  } else {
    m.harassment_detection = value;
  }
  return m;
}

}  // namespace detail

inline std::vector<BribeSweepRow> sweep_bribe_vs_probability(const ModelParams& base, SweepAxis axis,
                                                             std::span<const double> grid,
                                                             const SweepOptions& options = {}) {
  detail::check_grid(grid);
  if (options.harassment_ratio && !(*options.harassment_ratio >= 0.0 && *options.harassment_ratio < 1.0))
    throw Error(ErrorKind::Domain, "harassment ratio must lie in [0,1)");
  std::vector<BribeSweepRow> rows(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        BribeSweepRow& row = rows[i];
        row.value = grid[i];
        try {
          const Equilibrium e =
              equilibrium_bribe_closed_form(detail::at_grid_point(base, axis, grid[i], options));
          row.bribe = e.bribe;
          row.feasible = e.feasible;
        } catch (const Error& err) {
          row.skipped = err.kind();
        }
      },
      options.threads);
  return rows;
}

}  // namespace briberynet
