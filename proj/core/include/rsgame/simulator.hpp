#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsgame/model.hpp"

namespace rsgame {

struct TrajectoryRecord {
  int state;
  int action1;
  int action2;
  double sojourn;    // S_n
  double jump_time;  // T_n, time the state was entered
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;  // epochs 0..n_t
  double t_max = 0.0;
  int n_t = 0;  // N_{t_max}
};

struct JEstimate {
  double point = 0.0;
  std::pair<double, double> ci99{0, 0};
  long n_paths = 0;
  double t = 0.0;
  double log_mean = 0.0;  // ln E[e^{theta C_t}], sample version
  std::uint64_t seed = 0;
};

struct TailReport {
  int r_alpha = 0;
  double alpha = 0.0;
  double t = 0.0;
  long n_paths = 0;
  struct Row {
    int n;
    double empirical;  // P[N_t >= n], sample version
    double bound;      // alpha^n e^{r_alpha t}
    bool flagged;      // empirical exceeds bound by > 3 binomial SEs
  };
  std::vector<Row> rows;
  int violations = 0;
};

Trajectory simulate_trajectory(const GameModel& model,
                               const StationaryStrategy& strategy1,
                               const StationaryStrategy& strategy2,
                               int start_state, double t_max, std::uint64_t seed);

// Pathwise total cost to t_max: integrated running cost over each completed
// sojourn plus the truncated final segment; in zero-sum mode the immediate
// cost is added at every decision epoch 0..N_t.
double accumulate_cost(const GameModel& model, const Trajectory& traj, int player,
                       bool zero_sum);

JEstimate estimate_J(const GameModel& model, const StationaryStrategy& strategy1,
                     const StationaryStrategy& strategy2, int start_state,
                     double t, long n_paths, std::uint64_t seed, int player = 1,
                     bool zero_sum = true);

TailReport tail_diagnostic(const GameModel& model, double alpha, double t,
                           long n_paths, std::uint64_t seed);

std::string j_estimate_to_json(const JEstimate& est, const GameModel& model);
std::string tail_report_to_json(const TailReport& report, const GameModel& model);

}  // namespace rsgame
