#include "rsgame/nash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "internal_math.hpp"
#include "json.hpp"
#include "rsgame/discrete_solver.hpp"
#include "rsgame/oracle.hpp"
#include "rsgame/root_find.hpp"
#include "rsgame/transform.hpp"

namespace rsgame {

namespace {

constexpr double kGapTol = 1e-6;

double eval_log_growth(const GameModel& model, const CostTable& table,
                       const StationaryStrategy& s1, const StationaryStrategy& s2) {
  const int n = model.num_states();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> lq(n, std::vector<double>(n, neg_inf));
  double offset = neg_inf;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<double> terms;
      for (int a = 0; a < model.num_actions1(i); ++a)
        for (int b = 0; b < model.num_actions2(i); ++b) {
          double w =
              s1.probs[i][a] * s2.probs[i][b] * model.transition[i][a][b][j];
          if (w > 0) terms.push_back(std::log(w) + model.theta * table.at(i, a, b));
        }
      if (!terms.empty()) {
        lq[i][j] = detail::logsumexp(terms);
        offset = std::max(offset, lq[i][j]);
      }
    }
  }
  std::vector<std::vector<double>> Q(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (lq[i][j] != neg_inf) Q[i][j] = std::exp(lq[i][j] - offset);
  return offset + std::log(oracle::spectral_radius(Q));
}

}  // namespace

double evaluation_root(const GameModel& model, const StationaryStrategy& strategy1,
                       const StationaryStrategy& strategy2, int player) {
  check_strategy(model, strategy1, 1);
  check_strategy(model, strategy2, 2);
  auto f = [&](double g) {
    CostTable table = build_cost_table(model, player, g);
    return eval_log_growth(model, table, strategy1, strategy2) / model.theta;
  };
  return solve_monotone_root(f).g;
}

BestResponse best_response(const GameModel& model,
                           const StationaryStrategy& opponent, int player) {
  check_strategy(model, opponent, player == 1 ? 2 : 1);
  auto mu = [&](double g) {
    CostTable table = build_cost_table(model, player, g);
    return solve_discrete_mdp(model, table, opponent, player, Sense::minimize).mu;
  };
  RootResult root = solve_monotone_root(mu);

  CostTable table = build_cost_table(model, player, root.g);
  DiscreteSolution sol =
      solve_discrete_mdp(model, table, opponent, player, Sense::minimize);
  BestResponse br;
  br.g = root.g;
  br.h = std::move(sol.h);
  br.strategy = player == 1 ? std::move(sol.strategy1) : std::move(sol.strategy2);
  br.residual = sol.residual + std::abs(sol.mu);
  return br;
}

NashGaps verify_nash(const GameModel& model, const StationaryStrategy& strategy1,
                     const StationaryStrategy& strategy2) {
  NashGaps gaps;
  gaps.g1 = evaluation_root(model, strategy1, strategy2, 1);
  gaps.g2 = evaluation_root(model, strategy1, strategy2, 2);
  gaps.gap1 = gaps.g1 - best_response(model, strategy2, 1).g;
  gaps.gap2 = gaps.g2 - best_response(model, strategy1, 2).g;
  return gaps;
}

NashReport solve_nash(const GameModel& model, const StationaryStrategy* init1,
                      const StationaryStrategy* init2, double damping,
                      int max_iters) {
  if (!(damping > 0 && damping <= 1))
    throw std::invalid_argument("damping must lie in (0, 1]");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  NashReport report;
  report.damping = damping;
  report.init1 = init1 != nullptr ? *init1 : uniform_strategy(model, 1);
  report.init2 = init2 != nullptr ? *init2 : uniform_strategy(model, 2);
  check_strategy(model, report.init1, 1);
  check_strategy(model, report.init2, 2);

  StationaryStrategy phi1 = report.init1, phi2 = report.init2;
  BestResponse b1, b2;
  double g1 = 0, g2 = 0, gap1 = 0, gap2 = 0;

  auto fill = [&](StationaryStrategy s1, StationaryStrategy s2, double rg1,
                  double rg2, double rgap1, double rgap2, int iter,
                  bool converged) {
    report.strategy1 = std::move(s1);
    report.strategy2 = std::move(s2);
    report.g1 = rg1;
    report.g2 = rg2;
    report.gap1 = rgap1;
    report.gap2 = rgap2;
    report.h1 = best_response(model, report.strategy2, 1).h;
    report.h2 = best_response(model, report.strategy1, 2).h;
    report.iterations = iter;
    report.converged = converged;
  };

  for (int iter = 1; iter <= max_iters; ++iter) {
    b1 = best_response(model, phi2, 1);
    b2 = best_response(model, phi1, 2);
    g1 = evaluation_root(model, phi1, phi2, 1);
    g2 = evaluation_root(model, phi1, phi2, 2);
    gap1 = g1 - b1.g;
    gap2 = g2 - b2.g;
    if (std::abs(gap1) <= kGapTol && std::abs(gap2) <= kGapTol) {
      fill(phi1, phi2, g1, g2, gap1, gap2, iter, true);
      return report;
    }

    // Probe the pure best-response pair directly; decoupled and many strict
    // games land on it immediately.
    NashGaps cand = verify_nash(model, b1.strategy, b2.strategy);
    if (std::abs(cand.gap1) <= kGapTol && std::abs(cand.gap2) <= kGapTol) {
      fill(b1.strategy, b2.strategy, cand.g1, cand.g2, cand.gap1, cand.gap2,
           iter, true);
      return report;
    }

    for (int i = 0; i < model.num_states(); ++i) {
      for (size_t a = 0; a < phi1.probs[i].size(); ++a)
        phi1.probs[i][a] =
            (1 - damping) * phi1.probs[i][a] + damping * b1.strategy.probs[i][a];
      for (size_t b = 0; b < phi2.probs[i].size(); ++b)
        phi2.probs[i][b] =
            (1 - damping) * phi2.probs[i][b] + damping * b2.strategy.probs[i][b];
    }
  }
  fill(phi1, phi2, g1, g2, gap1, gap2, max_iters, false);
  return report;
}

std::vector<double> hitting_time_h(const GameModel& model,
                                   const StationaryStrategy& opponent, int player,
                                   double g) {
  check_strategy(model, opponent, player == 1 ? 2 : 1);
  const int n = model.num_states();
  const int istar = model.reference_state;
  CostTable table = build_cost_table(model, player, g);

  std::vector<double> W(n, 0.0), next(n, 0.0);
  for (long it = 0; it < 1000000; ++it) {
    double change = 0, top = 0;
    for (int i = 0; i < n; ++i) {
      if (i == istar) continue;
      const bool row_side = player == 1;
      const int own = row_side ? model.num_actions1(i) : model.num_actions2(i);
      const int other = row_side ? model.num_actions2(i) : model.num_actions1(i);
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < own; ++k) {
        double v = 0;
        for (int l = 0; l < other; ++l) {
          int a = row_side ? k : l, b = row_side ? l : k;
          double reach = model.transition[i][a][b][istar];
          for (int j = 0; j < n; ++j)
            if (j != istar) reach += model.transition[i][a][b][j] * W[j];
          v += opponent.probs[i][l] *
               std::exp(model.theta * table.at(i, a, b)) * reach;
        }
        best = std::min(best, v);
      }
      next[i] = best;
      change = std::max(change, std::abs(best - W[i]));
      top = std::max(top, best);
    }
    W = next;
    if (top > 1e250)
      throw SolverError("hitting-time representation unavailable (iteration diverged)");
    if (change < 1e-12) {
      std::vector<double> h(n, 0.0);
      for (int i = 0; i < n; ++i)
        if (i != istar) h[i] = std::log(W[i]) / model.theta;
      return h;
    }
  }
  throw SolverError(
      "hitting-time representation unavailable (iteration did not converge)");
}

std::string nash_report_to_json(const GameModel& model, const NashReport& report) {
  auto strategy_json = [&](const StationaryStrategy& s, int player) {
    const auto& actions = player == 1 ? model.actions1 : model.actions2;
    nlohmann::ordered_json probs;
    for (int i = 0; i < model.num_states(); ++i) {
      nlohmann::ordered_json row;
      for (size_t a = 0; a < actions[i].size(); ++a) row[actions[i][a]] = s.probs[i][a];
      probs[model.states[i]] = std::move(row);
    }
    nlohmann::ordered_json out;
    out["player"] = player;
    out["probs"] = std::move(probs);
    return out;
  };
  auto h_json = [&](const std::vector<double>& h) {
    nlohmann::ordered_json out;
    for (int i = 0; i < model.num_states(); ++i) out[model.states[i]] = h[i];
    return out;
  };

  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["g1"] = report.g1;
  doc["g2"] = report.g2;
  doc["h1"] = h_json(report.h1);
  doc["h2"] = h_json(report.h2);
  doc["strategy1"] = strategy_json(report.strategy1, 1);
  doc["strategy2"] = strategy_json(report.strategy2, 2);
  doc["gap1"] = report.gap1;
  doc["gap2"] = report.gap2;
  doc["converged"] = report.converged;
  doc["iterations"] = report.iterations;
  doc["damping"] = report.damping;
  doc["init1"] = strategy_json(report.init1, 1);
  doc["init2"] = strategy_json(report.init2, 2);
  doc["model_hash"] = model_hash(model);
  return doc.dump(2) + "\n";
}

}  // namespace rsgame
