#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace briberynet {

struct GridMaximum {
  double argmax = 0.0;
  double value = 0.0;
  std::size_t index = 0;
  double step = 0.0;
};

/// Evaluates `f` on `points` equally spaced nodes of [lo, hi] and returns the
/// best node. Ties keep the first node.
template <class F>
GridMaximum grid_maximize(F&& f, double lo, double hi, std::size_t points) {
  GridMaximum best;
  best.step = points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0;
  best.argmax = lo;
  best.value = f(lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double t = i + 1 == points ? hi : lo + best.step * static_cast<double>(i);
    const double v = f(t);
    if (v > best.value) {
      best = {t, v, i, best.step};
    }
  }
  return best;
}

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// Stops once the bracket is narrower than `tol` or after `max_iter` steps;
/// in flat regions the bracket stops shrinking at roughly sqrt(eps)*|x|.
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iter = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < max_iter && (b - a) > tol; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Coarse grid scan followed by golden-section refinement inside the two grid
/// cells around the best node.
template <class F>
GridMaximum bracketed_maximize(F&& f, double lo, double hi, std::size_t points, double tol) {
  GridMaximum coarse = grid_maximize(f, lo, hi, points);
  if (points < 3) return coarse;
  const double left = coarse.index == 0 ? lo : coarse.argmax - coarse.step;
  const double right = coarse.index + 1 >= points ? hi : coarse.argmax + coarse.step;
  const double refined = golden_section_maximize(f, left, right, tol);
  const double refined_value = f(refined);
  if (refined_value >= coarse.value) {
    coarse.argmax = refined;
    coarse.value = refined_value;
  }
  return coarse;
}

}  // namespace briberynet
