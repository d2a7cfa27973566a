#pragma once

#include <string>
#include <vector>

#include "rsgame/model.hpp"

namespace rsgame {

// Equivalent one-step discrete cost table: immediate cost (when the model has
// one) plus the log moment-generating term of accumulated running cost minus
// g per unit sojourn time.
struct CostTable {
  std::vector<std::vector<std::vector<double>>> values;  // [i][a][b]
  double g = 0.0;
  int player = 1;

  double at(int i, int a, int b) const { return values[i][a][b]; }
  double sup_norm() const;
};

// Antiderivative of rho^player at s; throws std::domain_error outside [0, B].
double integrated_running_cost(const GameModel& model, int player, int i, int a,
                               int b, double s);

// (1/theta) * ln of the sojourn integral of e^{theta [P(s) - g s]}. Atom
// distributions are summed exactly; parametric kinds use 64-node
// Gauss-Legendre on the support interval. Evaluated in log space.
double sojourn_log_mgf(const GameModel& model, int player, int i, int a, int b,
                       double g);

CostTable build_cost_table(const GameModel& model, int player, double g);

// Applies the same shift to every entry; used by invariance tests.
CostTable shifted(const CostTable& table, double c);

// Debug export with the generating g, player, and model hash.
std::string cost_table_to_json(const CostTable& table, const GameModel& model);

}  // namespace rsgame
