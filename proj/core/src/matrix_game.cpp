#include "rsgame/matrix_game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "internal_math.hpp"

namespace rsgame {

namespace {

constexpr double kPivotEps = 1e-11;

// Primal simplex, maximization, slack starting basis, Bland's rule.
//
//   maximize sum_a x_a   s.t.  sum_a x_a M'[a][b] <= 1 for all b,  x >= 0.
//
// With M' > 0 the optimum is 1/v where v is the shifted game value; the
// primal solution scales to the row mix and the slack reduced costs to the
// column mix.
struct SimplexResult {
  double objective;
  std::vector<double> x;  // length m
  std::vector<double> y;  // length n, duals
};

SimplexResult simplex_game(const std::vector<std::vector<double>>& Mp) {
  const int m = static_cast<int>(Mp.size());
  const int n = static_cast<int>(Mp[0].size());
  const int cols = m + n;

  // tab[r] holds constraint row r over [x | slack], rhs separate.
  std::vector<std::vector<double>> tab(n, std::vector<double>(cols, 0.0));
  std::vector<double> rhs(n, 1.0);
  std::vector<int> basis(n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < m; ++a) tab[b][a] = Mp[a][b];
    tab[b][m + b] = 1.0;
    basis[b] = m + b;
  }
  // obj[j] = z_j - c_j; optimal when all entries >= 0.
  std::vector<double> obj(cols, 0.0);
  for (int a = 0; a < m; ++a) obj[a] = -1.0;
  double obj_value = 0.0;

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (obj[j] < -kPivotEps) {
        enter = j;
        break;  // Bland: lowest index
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < n; ++r) {
      if (tab[r][enter] > kPivotEps) {
        double ratio = rhs[r] / tab[r][enter];
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             (leave < 0 || basis[r] < basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) throw SolverError("simplex: unbounded game LP");

    // Pivot on (leave, enter).
    const double piv = tab[leave][enter];
    for (int j = 0; j < cols; ++j) tab[leave][j] /= piv;
    rhs[leave] /= piv;
    for (int r = 0; r < n; ++r) {
      if (r == leave) continue;
      double f = tab[r][enter];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) tab[r][j] -= f * tab[leave][j];
      rhs[r] -= f * rhs[leave];
    }
    double f = obj[enter];
    for (int j = 0; j < cols; ++j) obj[j] -= f * tab[leave][j];
    obj_value -= f * rhs[leave];
    basis[leave] = enter;
  }

  SimplexResult res;
  res.objective = obj_value;
  res.x.assign(m, 0.0);
  for (int r = 0; r < n; ++r) {
    if (basis[r] < m) res.x[basis[r]] = rhs[r];
  }
  res.y.assign(n, 0.0);
  for (int b = 0; b < n; ++b) res.y[b] = std::max(0.0, obj[m + b]);
  return res;
}

}  // namespace

GameSolution solve_matrix_game(const MatrixGame& game) {
  const int m = game.rows(), n = game.cols();
  if (m < 1 || n < 1) throw std::invalid_argument("empty matrix game");

  double lo = game.entries[0][0];
  for (const auto& row : game.entries)
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite game entry");
      lo = std::min(lo, v);
    }
  const double shift = 1.0 - lo;  // entries >= 1 after shifting

  std::vector<std::vector<double>> Mp(m, std::vector<double>(n));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b) Mp[a][b] = game.entries[a][b] + shift;

  SimplexResult lp = simplex_game(Mp);
  const double v_shifted = 1.0 / lp.objective;

  GameSolution sol;
  sol.value = v_shifted - shift;
  sol.row_mix.resize(m);
  sol.col_mix.resize(n);
  double sx = 0, sy = 0;
  for (double x : lp.x) sx += x;
  for (double y : lp.y) sy += y;
  for (int a = 0; a < m; ++a) sol.row_mix[a] = lp.x[a] / sx;
  for (int b = 0; b < n; ++b) sol.col_mix[b] = lp.y[b] / sy;
  return sol;
}

std::pair<double, int> best_response(const MatrixGame& game,
                                     const std::vector<double>& opponent_mix,
                                     Side side) {
  const int m = game.rows(), n = game.cols();
  if (side == Side::row) {
    if (static_cast<int>(opponent_mix.size()) != n)
      throw std::invalid_argument("opponent mix dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    int idx = 0;
    for (int a = 0; a < m; ++a) {
      double v = 0;
      for (int b = 0; b < n; ++b) v += opponent_mix[b] * game.entries[a][b];
      if (v < best - 0.0) {
        best = v;
        idx = a;
      }
    }
    return {best, idx};
  }
  if (static_cast<int>(opponent_mix.size()) != m)
    throw std::invalid_argument("opponent mix dimension mismatch");
  double best = -std::numeric_limits<double>::infinity();
  int idx = 0;
  for (int b = 0; b < n; ++b) {
    double v = 0;
    for (int a = 0; a < m; ++a) v += opponent_mix[a] * game.entries[a][b];
    if (v > best) {
      best = v;
      idx = b;
    }
  }
  return {best, idx};
}

LocalMatrix shapley_local_matrix(const GameModel& model, const CostTable& table,
                                 const std::vector<double>& h, int i) {
  const double theta = model.theta;
  const int m = model.num_actions1(i), n = model.num_actions2(i);

  std::vector<std::vector<double>> log_entries(m, std::vector<double>(n));
  double max_abs = 0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<double> terms;
      for (int j = 0; j < model.num_states(); ++j) {
        double p = model.transition[i][a][b][j];
        if (p > 0) terms.push_back(std::log(p) + theta * h[j]);
      }
      log_entries[a][b] = theta * table.at(i, a, b) + detail::logsumexp(terms);
      max_abs = std::max(max_abs, std::abs(log_entries[a][b]));
    }
  }

  LocalMatrix out;
  // Overflow guard: rescale by the largest exponent only when needed, so that
  // small games keep their literal exponential entries.
  if (max_abs > 650.0) {
    double off = log_entries[0][0];
    for (const auto& row : log_entries)
      for (double v : row) off = std::max(off, v);
    out.log_offset = off;
  }
  out.game.entries.assign(m, std::vector<double>(n));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < n; ++b)
      out.game.entries[a][b] = std::exp(log_entries[a][b] - out.log_offset);
  return out;
}

}  // namespace rsgame
