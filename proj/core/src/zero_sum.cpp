#include "rsgame/zero_sum.hpp"

#include <stdexcept>

#include "json.hpp"
#include "rsgame/discrete_solver.hpp"
#include "rsgame/transform.hpp"

namespace rsgame {

double mu_of_g(const GameModel& model, double g) {
  CostTable table = build_cost_table(model, 1, g);
  try {
    return solve_discrete_game(model, table).mu;
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " (while evaluating mu at g=" +
                      std::to_string(g) + ")");
  }
}

namespace {

// Best-response value of one player against the other's fixed strategy:
// the root of the single-controller average equation in g.
double best_response_root(const GameModel& model, const StationaryStrategy& fixed,
                          int controlled_player, Sense sense) {
  auto mu = [&](double g) {
    CostTable table = build_cost_table(model, 1, g);
    return solve_discrete_mdp(model, table, fixed, controlled_player, sense).mu;
  };
  return solve_monotone_root(mu).g;
}

}  // namespace

ZeroSumReport solve_zero_sum(const GameModel& model, double tol) {
  if (!model.has_immediate_cost)
    throw std::invalid_argument("solve_zero_sum requires an immediate_cost table");

  ZeroSumReport report;
  ValidationReport validation = validate(model);
  if (validation.overall() == CheckStatus::fail)
    throw std::invalid_argument("model fails validation: " +
                                validation_report_to_json(validation));
  report.assumptions_supported =
      validation.irreducibility_status == CheckStatus::pass;

  RootResult root = solve_monotone_root([&](double g) { return mu_of_g(model, g); },
                                        0.0, 1.0, tol);
  report.g = root.g;
  report.bracket = {root.lo, root.hi};
  report.mu_trace = std::move(root.trace);

  CostTable table = build_cost_table(model, 1, report.g);
  DiscreteSolution sol = solve_discrete_game(model, table);
  // Residual of the optimality equation at (g, h): mu at the root absorbs the
  // remaining bisection slack.
  report.h = std::move(sol.h);
  report.strategy1 = std::move(sol.strategy1);
  report.strategy2 = std::move(sol.strategy2);
  report.residual = sol.residual + std::abs(sol.mu);

  auto [gap1, gap2] = verify_saddle(model, report);
  report.gap1 = gap1;
  report.gap2 = gap2;
  return report;
}

std::pair<double, double> verify_saddle(const GameModel& model,
                                        const ZeroSumReport& report) {
  double br1 = best_response_root(model, report.strategy2, 1, Sense::minimize);
  double br2 = best_response_root(model, report.strategy1, 2, Sense::maximize);
  return {report.g - br1, report.g - br2};
}

std::string zero_sum_report_to_json(const GameModel& model,
                                    const ZeroSumReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["g"] = report.g;
  nlohmann::ordered_json h;
  for (int i = 0; i < model.num_states(); ++i) h[model.states[i]] = report.h[i];
  doc["h"] = std::move(h);
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
  doc["strategy1"] = strategy_json(report.strategy1, 1);
  doc["strategy2"] = strategy_json(report.strategy2, 2);
  doc["residual"] = report.residual;
  doc["gap1"] = report.gap1;
  doc["gap2"] = report.gap2;
  doc["bracket"] = nlohmann::ordered_json::array({report.bracket.first, report.bracket.second});
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& [g, mu] : report.mu_trace)
    trace.push_back(nlohmann::ordered_json::array({g, mu}));
  doc["mu_trace"] = std::move(trace);
  doc["assumptions_supported"] = report.assumptions_supported;
  doc["model_hash"] = model_hash(model);
  return doc.dump(2) + "\n";
}

}  // namespace rsgame
