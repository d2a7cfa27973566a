#pragma once

#include <string>
#include <vector>

#include "rsgame/model.hpp"

namespace rsgame {

struct BestResponse {
  double g = 0.0;
  std::vector<double> h;  // h(i*) = 0
  StationaryStrategy strategy;  // pure
  double residual = 0.0;
};

struct NashReport {
  StationaryStrategy strategy1, strategy2;
  StationaryStrategy init1, init2;
  double g1 = 0.0, g2 = 0.0;
  std::vector<double> h1, h2;  // h_m(i*) = 0
  double gap1 = 0.0, gap2 = 0.0;
  int iterations = 0;
  bool converged = false;
  double damping = 0.5;
};

struct NashGaps {
  double g1 = 0.0, g2 = 0.0;
  double gap1 = 0.0, gap2 = 0.0;
};

// Risk-sensitive SMDP best response of `player` against the fixed opponent
// strategy: root of the single-controller average equation in g, with the
// optimal pure reply and its bias function.
BestResponse best_response(const GameModel& model,
                           const StationaryStrategy& opponent, int player);

// Damped simultaneous best-response iteration. Non-convergence is reported
// (converged=false), not thrown.
NashReport solve_nash(const GameModel& model,
                      const StationaryStrategy* init1 = nullptr,
                      const StationaryStrategy* init2 = nullptr,
                      double damping = 0.5, int max_iters = 500);

// g_m = evaluation root of the fixed pair for player m; gap_m = g_m minus the
// best-response value against the partner. Nonnegative gaps within tolerance
// certify no profitable stationary deviation.
NashGaps verify_nash(const GameModel& model, const StationaryStrategy& strategy1,
                     const StationaryStrategy& strategy2);

// Scalar root in g of (1/theta) ln of the Perron root of the fixed-pair
// evaluation kernel; the average risk-sensitive cost of the pair for `player`.
double evaluation_root(const GameModel& model, const StationaryStrategy& strategy1,
                       const StationaryStrategy& strategy2, int player);

// First-passage representation of the bias: multiplicative value iteration on
// the absorbing-at-reference operator. Throws SolverError when the iteration
// diverges ("hitting-time representation unavailable").
std::vector<double> hitting_time_h(const GameModel& model,
                                   const StationaryStrategy& opponent, int player,
                                   double g);

std::string nash_report_to_json(const GameModel& model, const NashReport& report);

}  // namespace rsgame
