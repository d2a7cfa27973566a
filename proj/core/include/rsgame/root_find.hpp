#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace rsgame {

struct RootResult {
  double g = 0.0;
  double lo = 0.0, hi = 0.0;  // final bracket
  std::vector<std::pair<double, double>> trace;  // (g, f(g)) evaluations
};

// Root of a nonincreasing scalar function: geometric bracket expansion around
// g0 (radius doubled, at most max_doublings times) followed by bisection to
// |hi - lo| <= width_tol. Requires |f| <= value_tol at the returned point.
RootResult solve_monotone_root(const std::function<double(double)>& f,
                               double g0 = 0.0, double radius = 1.0,
                               double width_tol = 1e-11, double value_tol = 1e-9,
                               int max_doublings = 60);

}  // namespace rsgame
