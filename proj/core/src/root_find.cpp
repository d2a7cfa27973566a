#include "rsgame/root_find.hpp"

#include <cmath>
#include <sstream>

#include "rsgame/model.hpp"

namespace rsgame {

RootResult solve_monotone_root(const std::function<double(double)>& f, double g0,
                               double radius, double width_tol, double value_tol,
                               int max_doublings) {
  RootResult res;
  auto eval = [&](double g) {
    double v = f(g);
    res.trace.emplace_back(g, v);
    return v;
  };

  double lo = g0 - radius, hi = g0 + radius;
  double f_lo = eval(lo), f_hi = eval(hi);
  // Want f(lo) >= 0 >= f(hi); f is nonincreasing.
  int doublings = 0;
  while ((f_lo < 0 || f_hi > 0) && doublings < max_doublings) {
    radius *= 2;
    if (f_lo < 0) {
      lo = g0 - radius;
      f_lo = eval(lo);
    }
    if (f_hi > 0) {
      hi = g0 + radius;
      f_hi = eval(hi);
    }
    ++doublings;
  }
  if (f_lo < 0 || f_hi > 0) {
    std::ostringstream msg;
    msg << "bracket expansion exhausted after " << doublings
        << " doublings; f(" << lo << ")=" << f_lo << ", f(" << hi << ")=" << f_hi;
    throw SolverError(msg.str());
  }

  while (hi - lo > width_tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double resolution floor
    double f_mid = eval(mid);
    if (f_mid >= 0)
      lo = mid;
    else
      hi = mid;
  }

  res.g = 0.5 * (lo + hi);
  res.lo = lo;
  res.hi = hi;
  double f_root = eval(res.g);
  if (std::abs(f_root) > value_tol) {
    std::ostringstream msg;
    msg << "root residual " << f_root << " exceeds tolerance " << value_tol
        << " at g=" << res.g;
    throw SolverError(msg.str());
  }
  return res;
}

}  // namespace rsgame
