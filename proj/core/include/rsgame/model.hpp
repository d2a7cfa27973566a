#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsgame {

// Thrown when a model or strategy document cannot be parsed. The message
// carries the offending field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative scheme fails to converge. The message carries the
// last residual / trace diagnostics.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Running cost rate as a polynomial c0 + c1 t + ... + cd t^d on [0, B].
struct RunningCost {
  std::vector<double> coefficients;

  double eval(double t) const;
  // Antiderivative evaluated at s: integral of the polynomial over [0, s].
  double integral(double s) const;
  bool is_zero() const;
};

// Sojourn time distribution, supported on (0, horizon_bound].
struct SojournDist {
  enum class Kind { atoms, uniform, truncated_exponential };

  Kind kind = Kind::atoms;
  std::vector<std::pair<double, double>> atoms;  // (location, weight)
  double lo = 0.0, hi = 0.0;                     // uniform kind
  double rate = 0.0;  // truncated_exponential kind, truncated to (0, B]
};

// Per-state mixed action for one player; probs[i] is indexed by that state's
// own action list.
struct StationaryStrategy {
  std::vector<std::vector<double>> probs;
};

struct GameModel {
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> actions1;  // A(i)
  std::vector<std::vector<std::string>> actions2;  // B(i)
  double theta = 0.0;
  double horizon_bound = 0.0;
  int reference_state = 0;

  bool has_immediate_cost = false;
  std::vector<std::vector<std::vector<double>>> immediate_cost;  // [i][a][b]

  std::vector<std::vector<std::vector<RunningCost>>> running_cost1;
  bool has_running_cost2 = false;
  std::vector<std::vector<std::vector<RunningCost>>> running_cost2;

  std::vector<std::vector<std::vector<SojournDist>>> sojourn;
  // transition[i][a][b][j]
  std::vector<std::vector<std::vector<std::vector<double>>>> transition;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_actions1(int i) const { return static_cast<int>(actions1[i].size()); }
  int num_actions2(int i) const { return static_cast<int>(actions2[i].size()); }
  int state_index(const std::string& name) const;  // -1 when absent

  const RunningCost& running_cost(int player, int i, int a, int b) const;
};

enum class CheckStatus { pass, warn, fail };

const char* to_string(CheckStatus s);

struct ValidationReport {
  struct Entry {
    std::string name;
    CheckStatus status;
    std::string detail;
  };
  std::vector<Entry> checks;
  double m_rho = 0.0;
  CheckStatus irreducibility_status = CheckStatus::pass;
  CheckStatus assumption3_status = CheckStatus::pass;

  CheckStatus overall() const;
};

// ---- model / strategy (de)serialization ----

// Parses a model document (UTF-8 JSON). Unknown fields are rejected.
GameModel load_model(const std::string& text);

// Structural parse only; invariant violations (row sums, sojourn mass, ...)
// are left for validate() to report.
GameModel load_model_lenient(const std::string& text);

// Canonical serialization; save_model(load_model(x)) is idempotent byte-wise.
std::string save_model(const GameModel& model);

// FNV-1a hash of the canonical form, as a hex string.
std::string model_hash(const GameModel& model);

StationaryStrategy load_strategy(const std::string& text, const GameModel& model,
                                 int player);
std::string save_strategy(const StationaryStrategy& s, const GameModel& model,
                          int player);

StationaryStrategy uniform_strategy(const GameModel& model, int player);

// Throws std::invalid_argument when the strategy is not a valid per-state
// distribution over the player's action lists.
void check_strategy(const GameModel& model, const StationaryStrategy& s,
                    int player);

// ---- validation ----

// Structural checks, irreducibility under stationary policies, and the
// first-passage moment heuristic for the reference-state assumption.
ValidationReport validate(const GameModel& model);

// max over (i,a,b) of max over [0,B] of |rho^player|, by dense sampling.
double compute_m_rho(const GameModel& model, int player);

std::string validation_report_to_json(const ValidationReport& report);

}  // namespace rsgame
