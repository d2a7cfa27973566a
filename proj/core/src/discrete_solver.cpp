#include "rsgame/discrete_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal_math.hpp"

namespace rsgame {

namespace {

constexpr double kSpanTol = 1e-10;
constexpr double kDiscountedTol = 1e-12;
constexpr int kMaxSweeps = 100000;
constexpr long kMaxDiscountedIters = 1000000;

enum class LocalMode { game, mdp, evaluation };

struct LocalSpec {
  LocalMode mode = LocalMode::game;
  const StationaryStrategy* opponent = nullptr;   // mdp mode
  int controlled_player = 1;                      // mdp mode
  Sense sense = Sense::minimize;                  // mdp mode
  const StationaryStrategy* strategy1 = nullptr;  // evaluation mode
  const StationaryStrategy* strategy2 = nullptr;  // evaluation mode
};

struct LocalResult {
  double value;  // (1/theta)(ln val + log_offset)
  std::vector<double> row_mix, col_mix;
};

LocalResult local_solve(const GameModel& model, const CostTable& table,
                        const std::vector<double>& h, int i, const LocalSpec& spec) {
  LocalMatrix local = shapley_local_matrix(model, table, h, i);
  const auto& M = local.game.entries;
  const int m = local.game.rows(), n = local.game.cols();
  LocalResult out;

  switch (spec.mode) {
    case LocalMode::game: {
      GameSolution sol = solve_matrix_game(local.game);
      out.value = (std::log(sol.value) + local.log_offset) / model.theta;
      out.row_mix = std::move(sol.row_mix);
      out.col_mix = std::move(sol.col_mix);
      break;
    }
    case LocalMode::mdp: {
      const auto& mix = spec.opponent->probs[i];
      const bool row_side = spec.controlled_player == 1;
      const int choices = row_side ? m : n;
      double best = 0;
      int best_idx = 0;
      for (int k = 0; k < choices; ++k) {
        double v = 0;
        if (row_side) {
          for (int b = 0; b < n; ++b) v += mix[b] * M[k][b];
        } else {
          for (int a = 0; a < m; ++a) v += mix[a] * M[a][k];
        }
        bool better = (spec.sense == Sense::minimize) ? v < best : v > best;
        if (k == 0 || better) {
          best = v;
          best_idx = k;
        }
      }
      out.value = (std::log(best) + local.log_offset) / model.theta;
      auto& own = row_side ? out.row_mix : out.col_mix;
      own.assign(choices, 0.0);
      own[best_idx] = 1.0;
      (row_side ? out.col_mix : out.row_mix) = mix;
      break;
    }
    case LocalMode::evaluation: {
      double v = 0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b)
          v += spec.strategy1->probs[i][a] * spec.strategy2->probs[i][b] * M[a][b];
      out.value = (std::log(v) + local.log_offset) / model.theta;
      out.row_mix = spec.strategy1->probs[i];
      out.col_mix = spec.strategy2->probs[i];
      break;
    }
  }
  return out;
}

std::vector<double> apply_operator(const GameModel& model, const CostTable& table,
                                   const std::vector<double>& h,
                                   const LocalSpec& spec) {
  std::vector<double> u(model.num_states());
  for (int i = 0; i < model.num_states(); ++i)
    u[i] = local_solve(model, table, h, i, spec).value;
  return u;
}

DiscreteSolution finalize(const GameModel& model, const CostTable& table,
                          std::vector<double> h, double mu, const LocalSpec& spec,
                          int iterations, bool used_fallback) {
  const int n = model.num_states();
  DiscreteSolution sol;
  sol.mu = mu;
  sol.iterations = iterations;
  sol.used_fallback = used_fallback;
  sol.mdp_mode = spec.mode == LocalMode::mdp;

  // Normalization: max h = 0 in game mode, h(i*) = 0 in MDP mode.
  double shift = sol.mdp_mode ? h[model.reference_state]
                              : *std::max_element(h.begin(), h.end());
  for (double& v : h) v -= shift;

  sol.strategy1.probs.resize(n);
  sol.strategy2.probs.resize(n);
  sol.residual = 0;
  for (int i = 0; i < n; ++i) {
    LocalResult local = local_solve(model, table, h, i, spec);
    sol.strategy1.probs[i] = local.row_mix;
    sol.strategy2.probs[i] = local.col_mix;
    sol.residual = std::max(sol.residual, std::abs(local.value - mu - h[i]));
  }
  sol.h = std::move(h);
  return sol;
}

std::vector<double> discounted_value(const GameModel& model, const CostTable& table,
                                     double beta, const LocalSpec& spec) {
  const int n = model.num_states();
  std::vector<double> V(n, 0.0), bV(n, 0.0);
  double last_change = 0;
  for (long it = 0; it < kMaxDiscountedIters; ++it) {
    for (int i = 0; i < n; ++i) bV[i] = beta * V[i];
    std::vector<double> next = apply_operator(model, table, bV, spec);
    last_change = 0;
    for (int i = 0; i < n; ++i)
      last_change = std::max(last_change, std::abs(next[i] - V[i]));
    V.swap(next);
    if (last_change < kDiscountedTol) return V;
  }
  std::ostringstream msg;
  msg << "discounted fixed point did not converge (beta=" << beta
      << ", last sup-change=" << last_change << ")";
  throw SolverError(msg.str());
}

// Vanishing-discount scheme with beta_n = 1 - 2^-n and Richardson refinement
// over the last three levels.
DiscreteSolution vanishing_discount(const GameModel& model, const CostTable& table,
                                    const LocalSpec& spec,
                                    const std::string& span_history) {
  std::vector<double> mus;
  std::vector<double> h_last;
  int level = 0;
  for (int k = 1; k <= 40; ++k) {
    double beta = 1.0 - std::pow(2.0, -k);
    std::vector<double> V;
    try {
      V = discounted_value(model, table, beta, spec);
    } catch (const SolverError&) {
      break;  // iteration budget hit; refine from the levels we have
    }
    double z = *std::max_element(V.begin(), V.end());
    mus.push_back((1.0 - beta) * z);
    h_last.assign(V.size(), 0.0);
    for (size_t i = 0; i < V.size(); ++i) h_last[i] = V[i] - z;
    level = k;
  }
  if (mus.size() < 3) {
    throw SolverError("both average-cost schemes failed; span history: " +
                      span_history);
  }
  // mu_k = mu + c1 2^-k + c2 4^-k + ...: eliminate the first two error terms.
  size_t e = mus.size() - 1;
  double a0 = 2 * mus[e - 1] - mus[e - 2];
  double a1 = 2 * mus[e] - mus[e - 1];
  double mu = (4 * a1 - a0) / 3;
  DiscreteSolution sol =
      finalize(model, table, h_last, mu, spec, level, /*used_fallback=*/true);
  if (sol.residual > 1e-7) {
    std::ostringstream msg;
    msg << "vanishing-discount fallback residual " << sol.residual
        << " too large; span history: " << span_history;
    throw SolverError(msg.str());
  }
  return sol;
}

DiscreteSolution solve_average(const GameModel& model, const CostTable& table,
                               const LocalSpec& spec) {
  const int n = model.num_states();
  std::vector<double> h(n, 0.0);
  std::vector<double> d(n);
  std::ostringstream span_history;
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    std::vector<double> u = apply_operator(model, table, h, spec);
    for (int i = 0; i < n; ++i) d[i] = u[i] - h[i];
    double span = detail::span_seminorm(d);
    if (sweep % 10000 == 0) span_history << " " << span;
    if (span < kSpanTol) {
      double lo = *std::min_element(d.begin(), d.end());
      double hi = *std::max_element(d.begin(), d.end());
      return finalize(model, table, u, 0.5 * (lo + hi), spec, sweep,
                      /*used_fallback=*/false);
    }
    double top = *std::max_element(u.begin(), u.end());
    for (int i = 0; i < n; ++i) h[i] = u[i] - top;
  }
  return vanishing_discount(model, table, spec, span_history.str());
}

}  // namespace

std::vector<double> discounted_fixed_point(const GameModel& model,
                                           const CostTable& table, double beta,
                                           const OpponentSpec* opponent) {
  LocalSpec spec;
  if (opponent != nullptr) {
    spec.mode = LocalMode::mdp;
    spec.opponent = &opponent->strategy;
    spec.controlled_player = opponent->controlled_player;
    spec.sense = opponent->sense;
  }
  return discounted_value(model, table, beta, spec);
}

DiscreteSolution solve_discrete_game(const GameModel& model, const CostTable& table) {
  LocalSpec spec;
  spec.mode = LocalMode::game;
  return solve_average(model, table, spec);
}

DiscreteSolution solve_discrete_mdp(const GameModel& model, const CostTable& table,
                                    const StationaryStrategy& opponent,
                                    int controlled_player, Sense sense) {
  check_strategy(model, opponent, controlled_player == 1 ? 2 : 1);
  LocalSpec spec;
  spec.mode = LocalMode::mdp;
  spec.opponent = &opponent;
  spec.controlled_player = controlled_player;
  spec.sense = sense;
  return solve_average(model, table, spec);
}

double evaluate_fixed_pair_mu(const GameModel& model, const CostTable& table,
                              const StationaryStrategy& strategy1,
                              const StationaryStrategy& strategy2) {
  LocalSpec spec;
  spec.mode = LocalMode::evaluation;
  spec.strategy1 = &strategy1;
  spec.strategy2 = &strategy2;
  return solve_average(model, table, spec).mu;
}

}  // namespace rsgame
