#include <cmath>

#include "doctest.h"
#include "rsgame/model.hpp"
#include "rsgame/transform.hpp"
#include "util.hpp"

using namespace rsgame;

TEST_CASE("integrated_running_cost closed forms") {
  GameModel m = testutil::random_model(1);
  m.horizon_bound = 2.0;
  m.running_cost1[0][0][0].coefficients = {0.0};
  CHECK(integrated_running_cost(m, 1, 0, 0, 0, 1.3) == 0.0);

  m.running_cost1[0][0][0].coefficients = {1.0};
  CHECK(integrated_running_cost(m, 1, 0, 0, 0, 0.7) ==
        doctest::Approx(0.7).epsilon(1e-14));

  m.running_cost1[0][0][0].coefficients = {0.0, 0.0, 1.0};  // rho = t^2
  CHECK(integrated_running_cost(m, 1, 0, 0, 0, 1.5) ==
        doctest::Approx(1.125).epsilon(1e-14));

  CHECK_THROWS_AS(integrated_running_cost(m, 1, 0, 0, 0, 2.5), std::domain_error);
  CHECK_THROWS_AS(integrated_running_cost(m, 1, 0, 0, 0, -0.1), std::domain_error);
}

TEST_CASE("sojourn_log_mgf closed forms") {
  GameModel m = testutil::random_model(1);
  m.theta = 1.0;
  m.horizon_bound = 2.0;
  m.running_cost1[0][0][0].coefficients = {0.0};
  m.sojourn[0][0][0].kind = SojournDist::Kind::atoms;
  m.sojourn[0][0][0].atoms = {{0.5, 1.0}};
  CHECK(sojourn_log_mgf(m, 1, 0, 0, 0, 4.0) ==
        doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(sojourn_log_mgf(m, 1, 0, 0, 0, 0.0) == doctest::Approx(0.0));

  m.running_cost1[0][0][0].coefficients = {1.0};
  m.sojourn[0][0][0].kind = SojournDist::Kind::uniform;
  m.sojourn[0][0][0].lo = 0.0;
  m.sojourn[0][0][0].hi = 2.0;
  CHECK(sojourn_log_mgf(m, 1, 0, 0, 0, 0.0) ==
        doctest::Approx(std::log((std::exp(2.0) - 1.0) / 2.0)).epsilon(1e-12));
}

TEST_CASE("sojourn_log_mgf: g=0, rho=0 gives 0 for every kind") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    GameModel m = testutil::random_model(seed);
    for (int i = 0; i < m.num_states(); ++i)
      for (int a = 0; a < m.num_actions1(i); ++a)
        for (int b = 0; b < m.num_actions2(i); ++b) {
          m.running_cost1[i][a][b].coefficients = {0.0};
          CHECK(sojourn_log_mgf(m, 1, i, a, b, 0.0) ==
                doctest::Approx(0.0).epsilon(1e-12));
        }
  }
}

TEST_CASE("build_cost_table closed forms") {
  // deterministic sojourn 1, rho = 0: D_g = C - g entrywise
  GameModel m = testutil::load_data_model("t2.json");
  for (double g : {0.0, 1.3, -2.0}) {
    CostTable t = build_cost_table(m, 1, g);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(t.at(0, a, b) ==
              doctest::Approx(m.immediate_cost[0][a][b] - g).epsilon(1e-12));
  }

  // T1 at g=4: all entries 0
  GameModel t1 = testutil::load_data_model("t1.json");
  CHECK(build_cost_table(t1, 1, 4.0).at(0, 0, 0) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Lipschitz bound ||D_g - D_g'|| <= B|g - g'|") {
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> gdist(-10.0, 10.0);
  for (unsigned seed = 0; seed < 30; ++seed) {
    GameModel m = testutil::random_model(seed);
    double g = gdist(gen), gp = gdist(gen);
    CostTable a = build_cost_table(m, 1, g);
    CostTable b = build_cost_table(m, 1, gp);
    double sup = 0;
    for (int i = 0; i < m.num_states(); ++i)
      for (int x = 0; x < m.num_actions1(i); ++x)
        for (int y = 0; y < m.num_actions2(i); ++y)
          sup = std::max(sup, std::abs(a.at(i, x, y) - b.at(i, x, y)));
    CHECK(sup <= m.horizon_bound * std::abs(g - gp) + 1e-9);
  }
}

TEST_CASE("entrywise monotonicity in g") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    GameModel m = testutil::random_model(seed);
    CostTable lo = build_cost_table(m, 1, -1.5);
    CostTable hi = build_cost_table(m, 1, 2.5);
    for (int i = 0; i < m.num_states(); ++i)
      for (int a = 0; a < m.num_actions1(i); ++a)
        for (int b = 0; b < m.num_actions2(i); ++b)
          CHECK(lo.at(i, a, b) >= hi.at(i, a, b) - 1e-12);
  }
}

TEST_CASE("quadrature matches refined Simpson for uniform sojourns") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    GameModel m = testutil::random_model(seed);
    m.sojourn[0][0][0].kind = SojournDist::Kind::uniform;
    m.sojourn[0][0][0].lo = 0.1;
    m.sojourn[0][0][0].hi = m.horizon_bound;
    const RunningCost& rho = m.running_cost1[0][0][0];
    double g = 0.7, theta = m.theta;
    double lo = 0.1, hi = m.horizon_bound;

    auto f = [&](double s) { return std::exp(theta * (rho.integral(s) - g * s)); };
    const int n = 20000;  // composite Simpson, even interval count
    double h = (hi - lo) / n, sum = f(lo) + f(hi);
    for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
    double simpson = sum * h / 3.0 / (hi - lo);

    double quad = std::exp(theta * sojourn_log_mgf(m, 1, 0, 0, 0, g));
    CHECK(quad == doctest::Approx(simpson).epsilon(1e-12));
  }
}

TEST_CASE("boundedness of D_g") {
  for (unsigned seed = 0; seed < 15; ++seed) {
    GameModel m = testutil::random_model(seed);
    double g = (seed % 2 == 0) ? 1.7 : -0.9;
    double m_rho = compute_m_rho(m, 1);
    CostTable t = build_cost_table(m, 1, g);
    double bound = (m_rho + std::abs(g)) * m.horizon_bound;
    for (int i = 0; i < m.num_states(); ++i)
      for (int a = 0; a < m.num_actions1(i); ++a)
        for (int b = 0; b < m.num_actions2(i); ++b) {
          double c = m.immediate_cost[i][a][b];
          CHECK(t.at(i, a, b) >= c - bound - 1e-9);
          CHECK(t.at(i, a, b) <= c + bound + 1e-9);
        }
  }
}

TEST_CASE("shifted applies a uniform shift") {
  GameModel m = testutil::load_data_model("t3.json");
  CostTable t = build_cost_table(m, 1, 0.4);
  CostTable s = shifted(t, 1.25);
  for (int i = 0; i < m.num_states(); ++i)
    for (int a = 0; a < m.num_actions1(i); ++a)
      for (int b = 0; b < m.num_actions2(i); ++b)
        CHECK(s.at(i, a, b) == doctest::Approx(t.at(i, a, b) + 1.25));
}
