#include <algorithm>

#include "doctest.h"
#include "rsgame/model.hpp"
#include "util.hpp"

using namespace rsgame;

namespace {

const char* kMinimal = R"({
  "states": ["s0"],
  "theta": 1.0,
  "horizon_bound": 1.0,
  "reference_state": "s0",
  "actions1": {"s0": ["a0"]},
  "actions2": {"s0": ["b0"]},
  "running_cost1": {"s0": {"a0": {"b0": [0.0]}}},
  "sojourn": {"s0": {"a0": {"b0": {"kind": "atoms", "atoms": [[0.5, 1.0]]}}}},
  "transition": {"s0": {"a0": {"b0": {"s0": 1.0}}}}
})";

GameModel one_state_model() { return load_model(kMinimal); }

}  // namespace

TEST_CASE("load_model: minimal one-state document") {
  GameModel m = one_state_model();
  CHECK(m.num_states() == 1);
  CHECK(m.num_actions1(0) == 1);
  CHECK(m.num_actions2(0) == 1);
  CHECK(m.theta == 1.0);
  CHECK(!m.has_immediate_cost);
  CHECK(m.sojourn[0][0][0].atoms.size() == 1);
}

TEST_CASE("load_model: bad transition row sum is rejected with the row named") {
  std::string text(kMinimal);
  auto pos = text.find("\"s0\": 1.0");
  text.replace(pos, 9, "\"s0\": 0.9");
  CHECK_THROWS_WITH_AS(load_model(text),
                       doctest::Contains("transition"), ParseError);
  try {
    load_model(text);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("s0") != std::string::npos);
  }
  // lenient load keeps the document; validate reports the failure
  GameModel m = load_model_lenient(text);
  ValidationReport rep = validate(m);
  CHECK(rep.overall() == CheckStatus::fail);
  bool named = false;
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::fail &&
        c.detail.find("s0") != std::string::npos)
      named = true;
  CHECK(named);
}

TEST_CASE("load_model: unknown fields are rejected") {
  std::string text(kMinimal);
  text.insert(1, "\"extra\": 1,");
  CHECK_THROWS_AS(load_model(text), ParseError);
}

TEST_CASE("save/load round trip is byte-identical on T3") {
  std::string text = testutil::read_file(testutil::data_path("t3.json"));
  GameModel m = load_model(text);
  std::string canon = save_model(m);
  CHECK(save_model(load_model(canon)) == canon);
}

TEST_CASE("save/load round trip on random models") {
  for (unsigned seed = 0; seed < 25; ++seed) {
    GameModel m = testutil::random_model(seed, seed % 2 == 0, seed % 3 == 0);
    std::string canon = save_model(m);
    GameModel back = load_model(canon);
    CHECK(save_model(back) == canon);
    CHECK(model_hash(back) == model_hash(m));
  }
}

TEST_CASE("compute_m_rho closed forms") {
  GameModel m = one_state_model();
  CHECK(compute_m_rho(m, 1) == 0.0);

  m.horizon_bound = 2.0;
  m.running_cost1[0][0][0].coefficients = {0.0, 1.0};  // rho(t) = t
  CHECK(compute_m_rho(m, 1) == doctest::Approx(2.0).epsilon(1e-12));

  m.running_cost1[0][0][0].coefficients = {1.0, -1.0};  // rho(t) = 1 - t
  CHECK(compute_m_rho(m, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compute_m_rho is invariant under state relabeling") {
  GameModel m = testutil::load_data_model("t3.json");
  double before = compute_m_rho(m, 1);

  GameModel p = m;  // swap the two states everywhere
  auto swap2 = [](auto& v) { std::swap(v[0], v[1]); };
  swap2(p.states);
  swap2(p.actions1);
  swap2(p.actions2);
  swap2(p.immediate_cost);
  swap2(p.running_cost1);
  swap2(p.sojourn);
  swap2(p.transition);
  for (auto& plane : p.transition)
    for (auto& row : plane)
      for (auto& cell : row) std::swap(cell[0], cell[1]);
  p.reference_state = 1;
  CHECK(compute_m_rho(p, 1) == before);
}

TEST_CASE("validate: absorbing state fails irreducibility") {
  GameModel m = testutil::random_model(3);
  if (m.num_states() < 2) m = testutil::random_model(5);
  REQUIRE(m.num_states() >= 2);
  for (int a = 0; a < m.num_actions1(0); ++a)
    for (int b = 0; b < m.num_actions2(0); ++b) {
      std::fill(m.transition[0][a][b].begin(), m.transition[0][a][b].end(), 0.0);
      m.transition[0][a][b][0] = 1.0;
    }
  ValidationReport rep = validate(m);
  CHECK(rep.irreducibility_status == CheckStatus::fail);
  CHECK(rep.overall() == CheckStatus::fail);
}

TEST_CASE("validate: one-state model passes, E[R^tau] = R") {
  GameModel m = one_state_model();
  ValidationReport rep = validate(m);
  CHECK(rep.irreducibility_status == CheckStatus::pass);
  CHECK(rep.assumption3_status == CheckStatus::pass);
  // rho == 0 so R = e^0 = 1 and E[R^tau*] = 1
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "reference_first_passage") {
      found = true;
      CHECK(c.detail.find("R=1") != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("validate: T3 passes all checks") {
  ValidationReport rep = validate(testutil::load_data_model("t3.json"));
  CHECK(rep.overall() == CheckStatus::pass);
  CHECK(rep.assumption3_status == CheckStatus::pass);
}

TEST_CASE("validate flags exactly the broken invariant on perturbed models") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    GameModel m = testutil::random_model(seed);
    CHECK(validate(m).overall() != CheckStatus::fail);

    GameModel bad = m;
    bad.transition[0][0][0][0] += 0.2;  // break stochasticity
    CHECK(validate(bad).overall() == CheckStatus::fail);

    GameModel bad2 = m;
    bad2.theta = -1.0;
    CHECK(validate(bad2).overall() == CheckStatus::fail);

    GameModel bad3 = m;
    bad3.sojourn[0][0][0].kind = SojournDist::Kind::atoms;
    bad3.sojourn[0][0][0].atoms = {{bad3.horizon_bound * 2, 1.0}};  // off support
    CHECK(validate(bad3).overall() == CheckStatus::fail);
  }
}

TEST_CASE("strategy io and checks") {
  GameModel m = testutil::load_data_model("t3.json");
  StationaryStrategy u = uniform_strategy(m, 1);
  CHECK_NOTHROW(check_strategy(m, u, 1));

  std::string text = save_strategy(u, m, 1);
  StationaryStrategy back = load_strategy(text, m, 1);
  CHECK(back.probs == u.probs);
  CHECK(save_strategy(back, m, 1) == text);

  StationaryStrategy bad = u;
  bad.probs[0][0] += 0.1;
  CHECK_THROWS_AS(check_strategy(m, bad, 1), std::invalid_argument);
  StationaryStrategy wrong_len = u;
  wrong_len.probs[0].push_back(0.0);
  CHECK_THROWS_AS(check_strategy(m, wrong_len, 1), std::invalid_argument);
}

TEST_CASE("model_hash changes when the model changes") {
  GameModel m = testutil::load_data_model("t3.json");
  GameModel n = m;
  n.immediate_cost[0][0][0] += 1e-6;
  CHECK(model_hash(m) != model_hash(n));
}
