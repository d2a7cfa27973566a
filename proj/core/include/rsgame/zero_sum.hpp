#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsgame/model.hpp"
#include "rsgame/root_find.hpp"

namespace rsgame {

struct ZeroSumReport {
  double g = 0.0;              // game value, constant in the state
  std::vector<double> h;       // max h = 0
  StationaryStrategy strategy1, strategy2;
  double residual = 0.0;
  std::pair<double, double> bracket{0, 0};
  double gap1 = 0.0, gap2 = 0.0;
  std::vector<std::pair<double, double>> mu_trace;
  bool assumptions_supported = true;
};

// Average value of the embedded discrete game under the pay-rate transform at
// g; nonincreasing in g.
double mu_of_g(const GameModel& model, double g);

// Finds g with mu_of_g(model, g) = 0 (bracket expansion + bisection to
// bracket width `tol`), assembles (h, strategies) at the root and certifies
// the saddle point.
ZeroSumReport solve_zero_sum(const GameModel& model, double tol = 1e-11);

// Stationary-deviation certificates: gap1 = g - (player-1 best-response value
// against strategy2), gap2 = g - (player-2 best-response value against
// strategy1). Both vanish at a saddle point; a suboptimal strategy2 shows up
// as gap1 > 0 and a suboptimal strategy1 as gap2 < 0.
std::pair<double, double> verify_saddle(const GameModel& model,
                                        const ZeroSumReport& report);

std::string zero_sum_report_to_json(const GameModel& model,
                                    const ZeroSumReport& report);

}  // namespace rsgame
