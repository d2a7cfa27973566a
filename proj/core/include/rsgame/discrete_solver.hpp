#pragma once

#include <optional>
#include <vector>

#include "rsgame/matrix_game.hpp"
#include "rsgame/model.hpp"
#include "rsgame/transform.hpp"

namespace rsgame {

enum class Sense { minimize, maximize };

// Fixed opponent behaviour for the single-controller variants.
struct OpponentSpec {
  StationaryStrategy strategy;
  int controlled_player = 1;  // the optimizing player; opponent is the other
  Sense sense = Sense::minimize;
};

struct DiscreteSolution {
  double mu = 0.0;
  std::vector<double> h;  // game mode: max h = 0; MDP mode: h(i*) = 0
  StationaryStrategy strategy1, strategy2;
  bool mdp_mode = false;
  int iterations = 0;
  double residual = 0.0;
  bool used_fallback = false;
};

// Discounted exponential-cost fixed point V_beta (contraction iteration from
// V = 0 until sup-norm change < 1e-12).
std::vector<double> discounted_fixed_point(const GameModel& model,
                                           const CostTable& table, double beta,
                                           const OpponentSpec* opponent = nullptr);

// Average-cost equation of the embedded discrete-time game: relative value
// iteration on the log-Shapley operator, with a vanishing-discount fallback.
DiscreteSolution solve_discrete_game(const GameModel& model, const CostTable& table);

// Single-controller specialization: the controlled player optimizes over pure
// actions against the opponent-averaged exponential payoff. Returned strategy
// is pure; h is normalized at the reference state.
DiscreteSolution solve_discrete_mdp(const GameModel& model, const CostTable& table,
                                    const StationaryStrategy& opponent,
                                    int controlled_player,
                                    Sense sense = Sense::minimize);

// Both players fixed: average growth rate of the evaluation operator, by the
// same relative iteration (no optimization step).
double evaluate_fixed_pair_mu(const GameModel& model, const CostTable& table,
                              const StationaryStrategy& strategy1,
                              const StationaryStrategy& strategy2);

}  // namespace rsgame
