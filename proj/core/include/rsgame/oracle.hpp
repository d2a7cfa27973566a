#pragma once

#include <vector>

#include "rsgame/matrix_game.hpp"
#include "rsgame/model.hpp"
#include "rsgame/transform.hpp"

namespace rsgame {
// Brute-force references used by tests and the `oracle` CLI subcommand.
// These deliberately share no code with the production solvers.
namespace oracle {

// log E[e^{theta sum_{k<n} D(X_k,A_k,B_k)}] by exact forward recursion in log
// space under a fixed stationary pair, started at `start`.
double exact_exp_cost(const GameModel& model, const CostTable& table,
                      const StationaryStrategy& strategy1,
                      const StationaryStrategy& strategy2, int start, int n);

// Perron root of an irreducible nonnegative matrix by power iteration.
double spectral_radius(const std::vector<std::vector<double>>& matrix);

// Minimax over a simplex grid of row mixes against pure columns; upper bound
// on the game value within O(1/grid_points) times the entry spread.
double grid_minimax(const MatrixGame& game, int grid_points);

}  // namespace oracle
}  // namespace rsgame
