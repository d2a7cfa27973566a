#pragma once

#include <utility>
#include <vector>

#include "rsgame/model.hpp"
#include "rsgame/transform.hpp"

namespace rsgame {

// Finite zero-sum matrix game. The row player picks a mix over rows and
// minimizes the bilinear payoff; the column player maximizes.
struct MatrixGame {
  std::vector<std::vector<double>> entries;

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return entries.empty() ? 0 : static_cast<int>(entries[0].size()); }
};

struct GameSolution {
  double value = 0.0;
  std::vector<double> row_mix;
  std::vector<double> col_mix;
};

enum class Side { row, column };

// Exact mixed-strategy solution via LP (positive shift, primal simplex with
// Bland's rule, duals recovered from the final tableau).
GameSolution solve_matrix_game(const MatrixGame& game);

// Optimal pure reply against a fixed opponent mix; min over rows for
// side=row, max over columns for side=column. Ties break to lowest index.
std::pair<double, int> best_response(const MatrixGame& game,
                                     const std::vector<double>& opponent_mix,
                                     Side side);

// Local game of the exponentiated dynamic-programming operator at state i:
// entries e^{theta D(i,a,b)} * sum_j p_ij(a,b) e^{theta h(j)}, scaled down by
// e^{log_offset} when exponents would overflow.
struct LocalMatrix {
  MatrixGame game;
  double log_offset = 0.0;
};

LocalMatrix shapley_local_matrix(const GameModel& model, const CostTable& table,
                                 const std::vector<double>& h, int i);

}  // namespace rsgame
