#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rsgame/model.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(RSGAME_DATA_DIR) + "/" + name;
}

inline rsgame::GameModel load_data_model(const std::string& name) {
  return rsgame::load_model(read_file(data_path(name)));
}

// Small random valid model for property tests: 1-3 states, 1-3 actions per
// player, mixed sojourn kinds, polynomial rates of degree <= 2.
inline rsgame::GameModel random_model(unsigned seed, bool immediate_cost = true,
                                      bool second_running_cost = false) {
  std::mt19937 gen(seed);
  auto unif = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  };
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  };

  rsgame::GameModel m;
  const int ns = pick(1, 3);
  m.theta = unif(0.3, 1.5);
  m.horizon_bound = unif(1.0, 2.0);
  m.reference_state = 0;
  m.has_immediate_cost = immediate_cost;
  m.has_running_cost2 = second_running_cost;
  for (int i = 0; i < ns; ++i) {
    m.states.push_back("s" + std::to_string(i));
    int na = pick(1, 3), nb = pick(1, 3);
    std::vector<std::string> as, bs;
    for (int a = 0; a < na; ++a) as.push_back("a" + std::to_string(a));
    for (int b = 0; b < nb; ++b) bs.push_back("b" + std::to_string(b));
    m.actions1.push_back(as);
    m.actions2.push_back(bs);
  }

  auto rand_poly = [&]() {
    rsgame::RunningCost rc;
    int deg = pick(0, 2);
    for (int k = 0; k <= deg; ++k) rc.coefficients.push_back(unif(-0.5, 0.5));
    return rc;
  };
  auto rand_sojourn = [&]() {
    rsgame::SojournDist d;
    switch (pick(0, 2)) {
      case 0: {
        d.kind = rsgame::SojournDist::Kind::atoms;
        int k = pick(1, 3);
        double total = 0;
        std::vector<double> ws(k);
        for (double& w : ws) total += w = unif(0.1, 1.0);
        for (int j = 0; j < k; ++j)
          d.atoms.emplace_back(unif(0.05, m.horizon_bound), ws[j] / total);
        break;
      }
      case 1:
        d.kind = rsgame::SojournDist::Kind::uniform;
        d.lo = unif(0.0, m.horizon_bound / 2);
        d.hi = unif(d.lo + 0.1, m.horizon_bound);
        break;
      default:
        d.kind = rsgame::SojournDist::Kind::truncated_exponential;
        d.rate = unif(0.3, 3.0);
        break;
    }
    return d;
  };

  m.immediate_cost.resize(ns);
  m.running_cost1.resize(ns);
  m.running_cost2.resize(ns);
  m.sojourn.resize(ns);
  m.transition.resize(ns);
  for (int i = 0; i < ns; ++i) {
    int na = m.num_actions1(i), nb = m.num_actions2(i);
    if (immediate_cost)
      m.immediate_cost[i].assign(na, std::vector<double>(nb, 0.0));
    m.running_cost1[i].resize(na);
    if (second_running_cost) m.running_cost2[i].resize(na);
    m.sojourn[i].resize(na);
    m.transition[i].resize(na);
    for (int a = 0; a < na; ++a) {
      m.running_cost1[i][a].resize(nb);
      if (second_running_cost) m.running_cost2[i][a].resize(nb);
      m.sojourn[i][a].resize(nb);
      m.transition[i][a].resize(nb);
      for (int b = 0; b < nb; ++b) {
        if (immediate_cost) m.immediate_cost[i][a][b] = unif(-1.0, 1.0);
        m.running_cost1[i][a][b] = rand_poly();
        if (second_running_cost) m.running_cost2[i][a][b] = rand_poly();
        m.sojourn[i][a][b] = rand_sojourn();
        std::vector<double> row(ns);
        double total = 0;
        // strictly positive entries keep every pure pair irreducible
        for (int j = 0; j < ns; ++j) total += row[j] = unif(0.05, 1.0);
        for (int j = 0; j < ns; ++j) row[j] /= total;
        m.transition[i][a][b] = row;
      }
    }
  }
  return m;
}

inline rsgame::StationaryStrategy random_strategy(const rsgame::GameModel& m,
                                                  int player, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  rsgame::StationaryStrategy s;
  s.probs.resize(m.num_states());
  for (int i = 0; i < m.num_states(); ++i) {
    int n = player == 1 ? m.num_actions1(i) : m.num_actions2(i);
    s.probs[i].resize(n);
    double total = 0;
    for (double& p : s.probs[i]) total += p = unif(gen);
    for (double& p : s.probs[i]) p /= total;
  }
  return s;
}

}  // namespace testutil
