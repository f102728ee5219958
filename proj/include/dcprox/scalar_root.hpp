#pragma once

#include <cmath>

namespace dcprox {

struct ScalarRoot {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Root of an increasing function on a bracket [lo, hi] with f(lo) <= 0 <= f(hi).
/// Newton steps are taken from the current iterate and replaced by bisection
/// whenever they leave the bracket or fail to halve it fast enough.
template <class F, class DF>
ScalarRoot safeguarded_newton(F&& f, DF&& df, double lo, double hi, double x0, double ftol,
                              int max_iter = 200) {
  ScalarRoot r;
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  double f_prev = INFINITY;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    const double fx = f(x);
    r.root = x;
    r.residual = fx;
    if (std::fabs(fx) <= ftol) break;
    if (fx < 0.0) lo = x; else hi = x;
    const double d = df(x);
    const double newton = x - fx / d;
    const bool newton_ok = d > 0.0 && newton > lo && newton < hi && std::fabs(fx) <= 0.5 * f_prev;
    const double next = newton_ok ? newton : 0.5 * (lo + hi);
    f_prev = std::fabs(fx);
    if (next == x) break;
    x = next;
  }
  r.converged = std::fabs(r.residual) <= ftol;
  return r;
}

}  // namespace dcprox
