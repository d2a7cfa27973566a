#include "internal_math.hpp"

#include <mutex>

namespace rsgame::detail {

namespace {

// Nodes and weights of the 64-point rule on [-1, 1], computed once by Newton
// iteration on the Legendre polynomial.
struct ReferenceRule {
  double x[64];
  double w[64];
};

const ReferenceRule& reference_rule() {
  static ReferenceRule rule = [] {
    ReferenceRule r{};
    constexpr int n = 64;
    for (int i = 0; i < n / 2; ++i) {
      // Chebyshev-based initial guess.
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        // Recurrence for P_n(x) and its derivative.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.x[i] = -x;
      r.x[n - 1 - i] = x;
      r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
  }();
  return rule;
}

}  // namespace

QuadRule gauss_legendre(double a, double b) {
  const ReferenceRule& ref = reference_rule();
  QuadRule out;
  out.nodes.resize(64);
  out.weights.resize(64);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < 64; ++i) {
    out.nodes[i] = mid + half * ref.x[i];
    out.weights[i] = half * ref.w[i];
  }
  return out;
}

}  // namespace rsgame::detail
