#include "rsgame/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "internal_math.hpp"
#include "json.hpp"
#include "rsgame/threads.hpp"

namespace rsgame {

double CostTable::sup_norm() const {
  double best = 0;
  for (const auto& plane : values)
    for (const auto& row : plane)
      for (double v : row) best = std::max(best, std::abs(v));
  return best;
}

double integrated_running_cost(const GameModel& model, int player, int i, int a,
                               int b, double s) {
  if (s < 0 || s > model.horizon_bound)
    throw std::domain_error("integrated_running_cost: s outside [0, B]");
  return model.running_cost(player, i, a, b).integral(s);
}

double sojourn_log_mgf(const GameModel& model, int player, int i, int a, int b,
                       double g) {
  const double theta = model.theta;
  const RunningCost& rho = model.running_cost(player, i, a, b);
  const SojournDist& dist = model.sojourn[i][a][b];
  auto exponent = [&](double s) { return theta * (rho.integral(s) - g * s); };

  std::vector<double> terms;
  switch (dist.kind) {
    case SojournDist::Kind::atoms: {
      // Weights are renormalized so that uniform rescaling is a no-op.
      double total = 0;
      for (const auto& [s, w] : dist.atoms) total += w;
      terms.reserve(dist.atoms.size());
      for (const auto& [s, w] : dist.atoms)
        terms.push_back(std::log(w / total) + exponent(s));
      break;
    }
    case SojournDist::Kind::uniform: {
      auto rule = detail::gauss_legendre(dist.lo, dist.hi);
      const double log_density = -std::log(dist.hi - dist.lo);
      terms.reserve(rule.nodes.size());
      for (size_t k = 0; k < rule.nodes.size(); ++k)
        terms.push_back(std::log(rule.weights[k]) + log_density + exponent(rule.nodes[k]));
      break;
    }
    case SojournDist::Kind::truncated_exponential: {
      auto rule = detail::gauss_legendre(0.0, model.horizon_bound);
      const double lam = dist.rate;
      const double log_norm =
          std::log(lam) - std::log1p(-std::exp(-lam * model.horizon_bound));
      terms.reserve(rule.nodes.size());
      for (size_t k = 0; k < rule.nodes.size(); ++k) {
        double s = rule.nodes[k];
        terms.push_back(std::log(rule.weights[k]) + log_norm - lam * s + exponent(s));
      }
      break;
    }
  }
  return detail::logsumexp(terms) / theta;
}

CostTable build_cost_table(const GameModel& model, int player, double g) {
  CostTable table;
  table.g = g;
  table.player = player;
  table.values.resize(model.num_states());

  struct Cell {
    int i, a, b;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < model.num_states(); ++i) {
    table.values[i].assign(model.num_actions1(i),
                           std::vector<double>(model.num_actions2(i), 0.0));
    for (int a = 0; a < model.num_actions1(i); ++a)
      for (int b = 0; b < model.num_actions2(i); ++b) cells.push_back({i, a, b});
  }
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    const auto [i, a, b] = cells[k];
    double v = sojourn_log_mgf(model, player, i, a, b, g);
    if (model.has_immediate_cost) v += model.immediate_cost[i][a][b];
    table.values[i][a][b] = v;
  });
  return table;
}

CostTable shifted(const CostTable& table, double c) {
  CostTable out = table;
  for (auto& plane : out.values)
    for (auto& row : plane)
      for (double& v : row) v += c;
  return out;
}

std::string cost_table_to_json(const CostTable& table, const GameModel& model) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["g"] = table.g;
  doc["player"] = table.player;
  doc["model_hash"] = model_hash(model);
  doc["values"] = table.values;
  return doc.dump(2) + "\n";
}

}  // namespace rsgame
