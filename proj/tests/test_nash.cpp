#include <cmath>

#include "doctest.h"
#include "rsgame/discrete_solver.hpp"
#include "rsgame/nash.hpp"
#include "rsgame/oracle.hpp"
#include "rsgame/root_find.hpp"
#include "rsgame/transform.hpp"
#include "util.hpp"

using namespace rsgame;

namespace {

StationaryStrategy pure(const GameModel& m, int player,
                        const std::vector<int>& picks) {
  StationaryStrategy s;
  s.probs.resize(m.num_states());
  for (int i = 0; i < m.num_states(); ++i) {
    int n = player == 1 ? m.num_actions1(i) : m.num_actions2(i);
    s.probs[i].assign(n, 0.0);
    s.probs[i][picks[i]] = 1.0;
  }
  return s;
}

// single-state-per-action restriction used to build singleton-action models
GameModel singleton_model() {
  GameModel m = testutil::load_data_model("t4.json");
  for (int i = 0; i < m.num_states(); ++i) {
    m.actions1[i] = {m.actions1[i][0]};
    m.actions2[i] = {m.actions2[i][0]};
    m.running_cost1[i] = {{m.running_cost1[i][0][0]}};
    m.running_cost2[i] = {{m.running_cost2[i][0][0]}};
    m.sojourn[i] = {{m.sojourn[i][0][0]}};
    m.transition[i] = {{m.transition[i][0][0]}};
  }
  return m;
}

}  // namespace

TEST_CASE("best_response: decoupled game ignores the opponent") {
  GameModel m = testutil::load_data_model("t4_decoupled.json");
  BestResponse a = best_response(m, uniform_strategy(m, 2), 1);
  BestResponse b = best_response(m, pure(m, 2, {1, 1}), 1);
  CHECK(a.g == doctest::Approx(b.g).epsilon(1e-9));
  CHECK(a.strategy.probs == b.strategy.probs);
  CHECK(a.residual <= 1e-8);
  CHECK(a.h[m.reference_state] == 0.0);
}

TEST_CASE("best_response: singleton action set is policy evaluation") {
  GameModel m = singleton_model();
  StationaryStrategy opp = uniform_strategy(m, 2);
  BestResponse br = best_response(m, opp, 1);
  double eval = evaluation_root(m, uniform_strategy(m, 1), opp, 1);
  CHECK(br.g == doctest::Approx(eval).epsilon(1e-8));
}

TEST_CASE("best_response matches pure-policy enumeration on T3") {
  GameModel m = testutil::load_data_model("t3.json");
  StationaryStrategy opp = uniform_strategy(m, 2);
  BestResponse br = best_response(m, opp, 1);

  double best = 1e300;
  for (int p0 = 0; p0 < 2; ++p0)
    for (int p1 = 0; p1 < 2; ++p1)
      best = std::min(best,
                      evaluation_root(m, pure(m, 1, {p0, p1}), opp, 1));
  CHECK(br.g == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("best_response.g equals the scalar root of the MDP mu (two paths)") {
  GameModel m = testutil::load_data_model("t4.json");
  StationaryStrategy opp = uniform_strategy(m, 2);
  BestResponse br = best_response(m, opp, 1);
  double root = solve_monotone_root([&](double g) {
                  CostTable t = build_cost_table(m, 1, g);
                  return solve_discrete_mdp(m, t, opp, 1, Sense::minimize).mu;
                }).g;
  CHECK(br.g == doctest::Approx(root).epsilon(1e-8));
}

TEST_CASE("solve_nash: decoupled model converges immediately") {
  GameModel m = testutil::load_data_model("t4_decoupled.json");
  NashReport rep = solve_nash(m);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 2);
  CHECK(std::abs(rep.gap1) <= 1e-6);
  CHECK(std::abs(rep.gap2) <= 1e-6);

  // equilibrium equals the pair of independent SMDP optima
  BestResponse b1 = best_response(m, rep.strategy2, 1);
  BestResponse b2 = best_response(m, rep.strategy1, 2);
  CHECK(rep.g1 == doctest::Approx(b1.g).epsilon(1e-7));
  CHECK(rep.g2 == doctest::Approx(b2.g).epsilon(1e-7));
}

TEST_CASE("solve_nash: singleton actions are trivially Nash") {
  GameModel m = singleton_model();
  NashReport rep = solve_nash(m);
  CHECK(rep.converged);
  CHECK(rep.gap1 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.gap2 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.g1 == doctest::Approx(
                      evaluation_root(m, rep.strategy1, rep.strategy2, 1))
                      .epsilon(1e-9));
}

TEST_CASE("solve_nash: T4 equilibrium certified by verify_nash") {
  GameModel m = testutil::load_data_model("t4.json");
  NashReport rep = solve_nash(m);
  CHECK(rep.converged);
  NashGaps gaps = verify_nash(m, rep.strategy1, rep.strategy2);
  CHECK(std::abs(gaps.gap1) <= 1e-6);
  CHECK(std::abs(gaps.gap2) <= 1e-6);
  CHECK(gaps.g1 == doctest::Approx(rep.g1).epsilon(1e-7));
  CHECK(gaps.g2 == doctest::Approx(rep.g2).epsilon(1e-7));
  CHECK(rep.h1[m.reference_state] == 0.0);
  CHECK(rep.h2[m.reference_state] == 0.0);
}

TEST_CASE("verify_nash: perturbed strategy is flagged") {
  GameModel m = testutil::load_data_model("t4.json");
  NashReport rep = solve_nash(m);
  REQUIRE(rep.converged);
  StationaryStrategy bad = rep.strategy1;
  for (auto& row : bad.probs) {
    int top = row[0] >= 0.5 ? 0 : 1;
    row[top] -= 0.2;
    row[1 - top] += 0.2;
  }
  NashGaps gaps = verify_nash(m, bad, rep.strategy2);
  CHECK(gaps.gap1 > 1e-4);
}

TEST_CASE("solve_nash rejects bad damping") {
  GameModel m = testutil::load_data_model("t4.json");
  CHECK_THROWS_AS(solve_nash(m, nullptr, nullptr, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_nash(m, nullptr, nullptr, 1.5), std::invalid_argument);
}

TEST_CASE("hitting_time_h: one-state model is trivial") {
  GameModel m = testutil::load_data_model("t1.json");
  std::vector<double> h = hitting_time_h(m, uniform_strategy(m, 2), 1, 4.0);
  CHECK(h.size() == 1);
  CHECK(h[0] == 0.0);
}

TEST_CASE("hitting_time_h matches best_response h on T3 and T4") {
  for (const char* name : {"t3.json", "t4.json"}) {
    GameModel m = testutil::load_data_model(name);
    StationaryStrategy opp = uniform_strategy(m, 2);
    BestResponse br = best_response(m, opp, 1);
    std::vector<double> h = hitting_time_h(m, opp, 1, br.g);
    for (int i = 0; i < m.num_states(); ++i) {
      if (i == m.reference_state) continue;
      CHECK(h[i] == doctest::Approx(br.h[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("hitting_time_h diverges when theta is inflated") {
  GameModel m = testutil::load_data_model("t3.json");
  StationaryStrategy opp = uniform_strategy(m, 2);
  BestResponse br = best_response(m, opp, 1);
  GameModel hot = m;
  hot.theta *= 50.0;
  CHECK_THROWS_WITH_AS(hitting_time_h(hot, opp, 1, br.g),
                       doctest::Contains("hitting-time representation unavailable"),
                       SolverError);
}

TEST_CASE("report JSON carries the contract fields") {
  GameModel m = testutil::load_data_model("t4_decoupled.json");
  NashReport rep = solve_nash(m);
  std::string json = nash_report_to_json(m, rep);
  for (const char* key :
       {"\"schema_version\"", "\"g1\"", "\"g2\"", "\"h1\"", "\"h2\"",
        "\"strategy1\"", "\"strategy2\"", "\"gap1\"", "\"gap2\"",
        "\"converged\"", "\"iterations\"", "\"damping\"", "\"model_hash\""})
    CHECK(json.find(key) != std::string::npos);
}
