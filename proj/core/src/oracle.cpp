#include "rsgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "internal_math.hpp"

namespace rsgame::oracle {

double exact_exp_cost(const GameModel& model, const CostTable& table,
                      const StationaryStrategy& strategy1,
                      const StationaryStrategy& strategy2, int start, int n) {
  if (n < 0 || n > 10000) throw std::invalid_argument("horizon out of range");
  const int ns = model.num_states();
  const double theta = model.theta;
  const double neg_inf = -std::numeric_limits<double>::infinity();

  // lq[i][j] = log of the strategy-averaged exponential-cost kernel.
  std::vector<std::vector<double>> lq(ns, std::vector<double>(ns, neg_inf));
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < ns; ++j) {
      std::vector<double> terms;
      for (int a = 0; a < model.num_actions1(i); ++a) {
        for (int b = 0; b < model.num_actions2(i); ++b) {
          double w = strategy1.probs[i][a] * strategy2.probs[i][b] *
                     model.transition[i][a][b][j];
          if (w > 0) terms.push_back(std::log(w) + theta * table.at(i, a, b));
        }
      }
      if (!terms.empty()) lq[i][j] = detail::logsumexp(terms);
    }
  }

  std::vector<double> lv(ns, neg_inf);
  lv[start] = 0.0;
  std::vector<double> next(ns);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < ns; ++j) {
      std::vector<double> terms;
      for (int i = 0; i < ns; ++i) {
        if (lv[i] != neg_inf && lq[i][j] != neg_inf) terms.push_back(lv[i] + lq[i][j]);
      }
      next[j] = terms.empty() ? neg_inf : detail::logsumexp(terms);
    }
    lv = next;
  }
  return detail::logsumexp(lv);
}

double spectral_radius(const std::vector<std::vector<double>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  double top = 0;
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("not square");
    for (double v : row) {
      if (v < 0) throw std::invalid_argument("negative entry");
      top = std::max(top, v);
    }
  }
  if (top == 0) throw std::invalid_argument("zero matrix");

  // Power iteration on M + cI; the diagonal shift removes periodicity and
  // moves the Perron root to lambda + c.
  const double c = top;
  std::vector<double> v(n, 1.0), w(n);
  double lambda = 0;
  for (int it = 0; it < 1000000; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = c * v[i];
      for (int j = 0; j < n; ++j) s += matrix[i][j] * v[j];
      w[i] = s;
    }
    double norm = *std::max_element(w.begin(), w.end());
    for (int i = 0; i < n; ++i) w[i] /= norm;
    if (it > 0 && std::abs(norm - lambda) <= 1e-13 * std::max(1.0, std::abs(norm)))
      return norm - c;
    lambda = norm;
    v.swap(w);
  }
  return lambda - c;
}

namespace {

void grid_mixes(int parts, int units, std::vector<int>& prefix,
                const std::function<void(const std::vector<int>&)>& emit) {
  if (parts == 1) {
    prefix.push_back(units);
    emit(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 0; k <= units; ++k) {
    prefix.push_back(k);
    grid_mixes(parts - 1, units - k, prefix, emit);
    prefix.pop_back();
  }
}

}  // namespace

double grid_minimax(const MatrixGame& game, int grid_points) {
  const int m = game.rows(), n = game.cols();
  if (m > 4 || n > 4) throw std::invalid_argument("grid_minimax size cap exceeded");
  if (grid_points < 101) throw std::invalid_argument("grid_points must be >= 101");

  const int divisions = grid_points - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> prefix;
  grid_mixes(m, divisions, prefix, [&](const std::vector<int>& units) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < n; ++b) {
      double v = 0;
      for (int a = 0; a < m; ++a)
        v += (static_cast<double>(units[a]) / divisions) * game.entries[a][b];
      worst = std::max(worst, v);
    }
    best = std::min(best, worst);
  });
  return best;
}

}  // namespace rsgame::oracle
