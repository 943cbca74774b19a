#pragma once

#include <cmath>
#include <utility>

namespace ngon::detail {

// Root of f on [lo, hi] given f(lo) < 0 <= f(hi) (or the mirrored signs).
// Newton steps from df are taken when they stay inside the bracket and
// otherwise the bracket is bisected. Returns the iterate with smallest |f|.
template <typename F, typename DF>
double safeguarded_root(F&& f, DF&& df, double lo, double hi, double tol) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (f_lo > 0.0) {
    std::swap(lo, hi);
    std::swap(f_lo, f_hi);
  }
  // Invariant: f(lo) < 0 < f(hi); lo and hi may be in either order.
  double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  double best_f = std::min(std::abs(f_lo), std::abs(f_hi));
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = f(x);
    if (std::abs(fx) < best_f) {
      best_f = std::abs(fx);
      best = x;
    }
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (std::abs(hi - lo) <= tol) break;
    const double slope = df(x);
    double next = x - fx / slope;
    const double a = std::min(lo, hi);
    const double b = std::max(lo, hi);
    if (!std::isfinite(next) || next <= a || next >= b) {
      next = 0.5 * (lo + hi);
    }
    if (next == x) break;
    x = next;
  }
  return best;
}

}  // namespace ngon::detail
