#include "rsgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rsgame {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kMassTol = 1e-12;
constexpr int kMaxPolyDegree = 8;
constexpr int kPurePairCap = 4096;

[[noreturn]] void fail_parse(const std::string& path, const std::string& what) {
  throw ParseError("model parse error at " + path + ": " + what);
}

void reject_unknown(const ordered_json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail_parse(path, "unknown field '" + it.key() + "'");
  }
}

double get_number(const ordered_json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.contains(key)) fail_parse(path, "missing field '" + key + "'");
  if (!obj[key].is_number()) fail_parse(path + "/" + key, "expected a number");
  return obj[key].get<double>();
}

SojournDist parse_sojourn(const ordered_json& obj, const std::string& path) {
  if (!obj.is_object()) fail_parse(path, "expected an object");
  if (!obj.contains("kind") || !obj["kind"].is_string())
    fail_parse(path, "missing 'kind'");
  const std::string kind = obj["kind"].get<std::string>();
  SojournDist d;
  if (kind == "atoms") {
    d.kind = SojournDist::Kind::atoms;
    reject_unknown(obj, {"kind", "atoms"}, path);
    if (!obj.contains("atoms") || !obj["atoms"].is_array())
      fail_parse(path, "atoms kind requires 'atoms' array");
    for (const auto& pair : obj["atoms"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        fail_parse(path + "/atoms", "each atom must be [location, weight]");
      d.atoms.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    if (d.atoms.empty()) fail_parse(path + "/atoms", "empty atom list");
  } else if (kind == "uniform") {
    d.kind = SojournDist::Kind::uniform;
    reject_unknown(obj, {"kind", "lo", "hi"}, path);
    d.lo = get_number(obj, "lo", path);
    d.hi = get_number(obj, "hi", path);
  } else if (kind == "truncated_exponential") {
    d.kind = SojournDist::Kind::truncated_exponential;
    reject_unknown(obj, {"kind", "rate"}, path);
    d.rate = get_number(obj, "rate", path);
  } else {
    fail_parse(path, "unknown sojourn kind '" + kind + "'");
  }
  return d;
}

// Walks a state -> a -> b nested object and calls fn(i, a, b, leaf, path).
template <typename Fn>
void for_each_cell(const ordered_json& table, const GameModel& m,
                   const std::string& path, Fn&& fn) {
  if (!table.is_object()) fail_parse(path, "expected an object keyed by state");
  reject_unknown(table, std::set<std::string>(m.states.begin(), m.states.end()),
                 path);
  for (int i = 0; i < m.num_states(); ++i) {
    const std::string& si = m.states[i];
    if (!table.contains(si)) fail_parse(path, "missing state '" + si + "'");
    const auto& by_a = table[si];
    const std::string pi = path + "/" + si;
    if (!by_a.is_object()) fail_parse(pi, "expected an object keyed by action");
    reject_unknown(by_a,
                   std::set<std::string>(m.actions1[i].begin(), m.actions1[i].end()),
                   pi);
    for (int a = 0; a < m.num_actions1(i); ++a) {
      const std::string& sa = m.actions1[i][a];
      if (!by_a.contains(sa)) fail_parse(pi, "missing action '" + sa + "'");
      const auto& by_b = by_a[sa];
      const std::string pa = pi + "/" + sa;
      if (!by_b.is_object()) fail_parse(pa, "expected an object keyed by action");
      reject_unknown(by_b,
                     std::set<std::string>(m.actions2[i].begin(), m.actions2[i].end()),
                     pa);
      for (int b = 0; b < m.num_actions2(i); ++b) {
        const std::string& sb = m.actions2[i][b];
        if (!by_b.contains(sb)) fail_parse(pa, "missing action '" + sb + "'");
        fn(i, a, b, by_b[sb], pa + "/" + sb);
      }
    }
  }
}

std::vector<std::vector<std::string>> parse_actions(const ordered_json& obj,
                                                    const GameModel& m,
                                                    const std::string& path) {
  if (!obj.is_object()) fail_parse(path, "expected an object keyed by state");
  reject_unknown(obj, std::set<std::string>(m.states.begin(), m.states.end()), path);
  std::vector<std::vector<std::string>> out(m.num_states());
  for (int i = 0; i < m.num_states(); ++i) {
    const std::string& si = m.states[i];
    if (!obj.contains(si)) fail_parse(path, "missing state '" + si + "'");
    if (!obj[si].is_array()) fail_parse(path + "/" + si, "expected an array");
    for (const auto& a : obj[si]) {
      if (!a.is_string()) fail_parse(path + "/" + si, "action names must be strings");
      out[i].push_back(a.get<std::string>());
    }
  }
  return out;
}

GameModel parse_model(const std::string& text, bool enforce_invariants) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model parse error: top level must be an object");
  reject_unknown(doc,
                 {"states", "theta", "horizon_bound", "reference_state", "actions1",
                  "actions2", "immediate_cost", "running_cost1", "running_cost2",
                  "sojourn", "transition"},
                 "/");

  GameModel m;
  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty())
    fail_parse("/states", "expected a nonempty array of state names");
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) fail_parse("/states", "state names must be strings");
    m.states.push_back(s.get<std::string>());
  }
  if (std::set<std::string>(m.states.begin(), m.states.end()).size() !=
      m.states.size())
    fail_parse("/states", "duplicate state names");

  m.theta = get_number(doc, "theta", "/");
  m.horizon_bound = get_number(doc, "horizon_bound", "/");
  if (!doc.contains("reference_state") || !doc["reference_state"].is_string())
    fail_parse("/reference_state", "expected a state name");
  m.reference_state = m.state_index(doc["reference_state"].get<std::string>());
  if (m.reference_state < 0) fail_parse("/reference_state", "unknown state");

  if (!doc.contains("actions1")) fail_parse("/", "missing field 'actions1'");
  if (!doc.contains("actions2")) fail_parse("/", "missing field 'actions2'");
  m.actions1 = parse_actions(doc["actions1"], m, "/actions1");
  m.actions2 = parse_actions(doc["actions2"], m, "/actions2");

  auto alloc = [&](auto& table, auto zero) {
    table.resize(m.num_states());
    for (int i = 0; i < m.num_states(); ++i) {
      table[i].assign(m.num_actions1(i), std::vector(m.num_actions2(i), zero));
    }
  };

  if (doc.contains("immediate_cost")) {
    m.has_immediate_cost = true;
    alloc(m.immediate_cost, 0.0);
    for_each_cell(doc["immediate_cost"], m, "/immediate_cost",
                  [&](int i, int a, int b, const ordered_json& leaf,
                      const std::string& p) {
                    if (!leaf.is_number()) fail_parse(p, "expected a number");
                    m.immediate_cost[i][a][b] = leaf.get<double>();
                  });
  }

  auto parse_running = [&](const char* key, auto& table) {
    alloc(table, RunningCost{});
    for_each_cell(doc[key], m, std::string("/") + key,
                  [&](int i, int a, int b, const ordered_json& leaf,
                      const std::string& p) {
                    if (!leaf.is_array()) fail_parse(p, "expected coefficient array");
                    RunningCost rc;
                    for (const auto& c : leaf) {
                      if (!c.is_number()) fail_parse(p, "coefficients must be numbers");
                      rc.coefficients.push_back(c.get<double>());
                    }
                    if (static_cast<int>(rc.coefficients.size()) > kMaxPolyDegree + 1)
                      fail_parse(p, "polynomial degree exceeds 8");
                    table[i][a][b] = std::move(rc);
                  });
  };
  if (!doc.contains("running_cost1")) fail_parse("/", "missing field 'running_cost1'");
  parse_running("running_cost1", m.running_cost1);
  if (doc.contains("running_cost2")) {
    m.has_running_cost2 = true;
    parse_running("running_cost2", m.running_cost2);
  } else {
    alloc(m.running_cost2, RunningCost{});
  }

  if (!doc.contains("sojourn")) fail_parse("/", "missing field 'sojourn'");
  alloc(m.sojourn, SojournDist{});
  for_each_cell(doc["sojourn"], m, "/sojourn",
                [&](int i, int a, int b, const ordered_json& leaf,
                    const std::string& p) { m.sojourn[i][a][b] = parse_sojourn(leaf, p); });

  if (!doc.contains("transition")) fail_parse("/", "missing field 'transition'");
  m.transition.resize(m.num_states());
  for (int i = 0; i < m.num_states(); ++i) {
    m.transition[i].assign(
        m.num_actions1(i),
        std::vector(m.num_actions2(i), std::vector<double>(m.num_states(), 0.0)));
  }
  for_each_cell(doc["transition"], m, "/transition",
                [&](int i, int a, int b, const ordered_json& leaf,
                    const std::string& p) {
                  if (!leaf.is_object()) fail_parse(p, "expected state -> probability");
                  for (auto it = leaf.begin(); it != leaf.end(); ++it) {
                    int j = m.state_index(it.key());
                    if (j < 0) fail_parse(p, "unknown target state '" + it.key() + "'");
                    if (!it.value().is_number()) fail_parse(p, "expected a number");
                    m.transition[i][a][b][j] = it.value().get<double>();
                  }
                });

  if (enforce_invariants) {
    if (m.theta <= 0) fail_parse("/theta", "theta must be positive");
    if (m.horizon_bound <= 0) fail_parse("/horizon_bound", "horizon_bound must be positive");
    for (int i = 0; i < m.num_states(); ++i) {
      if (m.actions1[i].empty()) fail_parse("/actions1/" + m.states[i], "empty action list");
      if (m.actions2[i].empty()) fail_parse("/actions2/" + m.states[i], "empty action list");
      for (int a = 0; a < m.num_actions1(i); ++a) {
        for (int b = 0; b < m.num_actions2(i); ++b) {
          const std::string cell = "(" + m.states[i] + "," + m.actions1[i][a] + "," +
                                   m.actions2[i][b] + ")";
          double sum = 0;
          for (int j = 0; j < m.num_states(); ++j) {
            double p = m.transition[i][a][b][j];
            if (p < 0) fail_parse("/transition", "negative probability at " + cell);
            sum += p;
          }
          if (std::abs(sum - 1.0) > kMassTol)
            fail_parse("/transition", "row " + cell + " sums to " + std::to_string(sum));
          const SojournDist& d = m.sojourn[i][a][b];
          switch (d.kind) {
            case SojournDist::Kind::atoms: {
              double w = 0;
              for (auto& [s, wk] : d.atoms) {
                if (s <= 0 || s > m.horizon_bound)
                  fail_parse("/sojourn", "atom outside (0, B] at " + cell);
                if (wk <= 0) fail_parse("/sojourn", "nonpositive atom weight at " + cell);
                w += wk;
              }
              if (std::abs(w - 1.0) > kMassTol)
                fail_parse("/sojourn", "atom weights at " + cell + " sum to " +
                                           std::to_string(w));
              break;
            }
            case SojournDist::Kind::uniform:
              if (d.lo < 0 || d.lo >= d.hi || d.hi > m.horizon_bound)
                fail_parse("/sojourn", "uniform support outside [0, B] at " + cell);
              break;
            case SojournDist::Kind::truncated_exponential:
              if (d.rate <= 0) fail_parse("/sojourn", "nonpositive rate at " + cell);
              break;
          }
        }
      }
    }
  }
  return m;
}

ordered_json sojourn_to_json(const SojournDist& d) {
  ordered_json o;
  switch (d.kind) {
    case SojournDist::Kind::atoms: {
      o["kind"] = "atoms";
      ordered_json arr = ordered_json::array();
      for (auto& [s, w] : d.atoms) arr.push_back(ordered_json::array({s, w}));
      o["atoms"] = std::move(arr);
      break;
    }
    case SojournDist::Kind::uniform:
      o["kind"] = "uniform";
      o["lo"] = d.lo;
      o["hi"] = d.hi;
      break;
    case SojournDist::Kind::truncated_exponential:
      o["kind"] = "truncated_exponential";
      o["rate"] = d.rate;
      break;
  }
  return o;
}

template <typename Leaf>
ordered_json cells_to_json(const GameModel& m, Leaf&& leaf) {
  ordered_json table;
  for (int i = 0; i < m.num_states(); ++i) {
    ordered_json by_a;
    for (int a = 0; a < m.num_actions1(i); ++a) {
      ordered_json by_b;
      for (int b = 0; b < m.num_actions2(i); ++b) {
        by_b[m.actions2[i][b]] = leaf(i, a, b);
      }
      by_a[m.actions1[i][a]] = std::move(by_b);
    }
    table[m.states[i]] = std::move(by_a);
  }
  return table;
}

}  // namespace

double RunningCost::eval(double t) const {
  double v = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
    v = v * t + *it;
  return v;
}

double RunningCost::integral(double s) const {
  // Horner on the antiderivative sum c_k s^{k+1} / (k+1).
  double v = 0;
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k)
    v = v * s + coefficients[k] / (k + 1);
  return v * s;
}

bool RunningCost::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](double c) { return c == 0.0; });
}

int GameModel::state_index(const std::string& name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

const RunningCost& GameModel::running_cost(int player, int i, int a, int b) const {
  return player == 1 ? running_cost1[i][a][b] : running_cost2[i][a][b];
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::fail: return "fail";
  }
  return "?";
}

CheckStatus ValidationReport::overall() const {
  CheckStatus worst = CheckStatus::pass;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return CheckStatus::fail;
    if (c.status == CheckStatus::warn) worst = CheckStatus::warn;
  }
  return worst;
}

GameModel load_model(const std::string& text) { return parse_model(text, true); }

GameModel load_model_lenient(const std::string& text) {
  return parse_model(text, false);
}

std::string save_model(const GameModel& m) {
  ordered_json doc;
  doc["states"] = m.states;
  doc["theta"] = m.theta;
  doc["horizon_bound"] = m.horizon_bound;
  doc["reference_state"] = m.states[m.reference_state];
  ordered_json a1, a2;
  for (int i = 0; i < m.num_states(); ++i) {
    a1[m.states[i]] = m.actions1[i];
    a2[m.states[i]] = m.actions2[i];
  }
  doc["actions1"] = std::move(a1);
  doc["actions2"] = std::move(a2);
  if (m.has_immediate_cost) {
    doc["immediate_cost"] =
        cells_to_json(m, [&](int i, int a, int b) { return m.immediate_cost[i][a][b]; });
  }
  doc["running_cost1"] = cells_to_json(m, [&](int i, int a, int b) {
    return ordered_json(m.running_cost1[i][a][b].coefficients);
  });
  if (m.has_running_cost2) {
    doc["running_cost2"] = cells_to_json(m, [&](int i, int a, int b) {
      return ordered_json(m.running_cost2[i][a][b].coefficients);
    });
  }
  doc["sojourn"] =
      cells_to_json(m, [&](int i, int a, int b) { return sojourn_to_json(m.sojourn[i][a][b]); });
  doc["transition"] = cells_to_json(m, [&](int i, int a, int b) {
    ordered_json row;
    for (int j = 0; j < m.num_states(); ++j) {
      if (m.transition[i][a][b][j] != 0.0) row[m.states[j]] = m.transition[i][a][b][j];
    }
    return row;
  });
  return doc.dump(2) + "\n";
}

std::string model_hash(const GameModel& m) {
  const std::string canon = save_model(m);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

StationaryStrategy load_strategy(const std::string& text, const GameModel& m,
                                 int player) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("strategy parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("strategy parse error: top level must be an object");
  reject_unknown(doc, {"player", "probs"}, "/");
  if (!doc.contains("player") || !doc["player"].is_number_integer())
    throw ParseError("strategy parse error: missing 'player'");
  if (doc["player"].get<int>() != player)
    throw ParseError("strategy parse error: expected player " + std::to_string(player));
  if (!doc.contains("probs") || !doc["probs"].is_object())
    throw ParseError("strategy parse error: missing 'probs'");

  const auto& actions = (player == 1) ? m.actions1 : m.actions2;
  StationaryStrategy s;
  s.probs.resize(m.num_states());
  reject_unknown(doc["probs"], std::set<std::string>(m.states.begin(), m.states.end()),
                 "/probs");
  for (int i = 0; i < m.num_states(); ++i) {
    const std::string& si = m.states[i];
    if (!doc["probs"].contains(si))
      throw ParseError("strategy parse error: missing state '" + si + "'");
    const auto& row = doc["probs"][si];
    if (!row.is_object())
      throw ParseError("strategy parse error: probs must map action -> weight");
    reject_unknown(row, std::set<std::string>(actions[i].begin(), actions[i].end()),
                   "/probs/" + si);
    s.probs[i].assign(actions[i].size(), 0.0);
    for (size_t a = 0; a < actions[i].size(); ++a) {
      if (row.contains(actions[i][a])) s.probs[i][a] = row[actions[i][a]].get<double>();
    }
  }
  check_strategy(m, s, player);
  return s;
}

std::string save_strategy(const StationaryStrategy& s, const GameModel& m,
                          int player) {
  const auto& actions = (player == 1) ? m.actions1 : m.actions2;
  ordered_json doc;
  doc["player"] = player;
  ordered_json probs;
  for (int i = 0; i < m.num_states(); ++i) {
    ordered_json row;
    for (size_t a = 0; a < actions[i].size(); ++a) row[actions[i][a]] = s.probs[i][a];
    probs[m.states[i]] = std::move(row);
  }
  doc["probs"] = std::move(probs);
  return doc.dump(2) + "\n";
}

StationaryStrategy uniform_strategy(const GameModel& m, int player) {
  StationaryStrategy s;
  s.probs.resize(m.num_states());
  for (int i = 0; i < m.num_states(); ++i) {
    int n = (player == 1) ? m.num_actions1(i) : m.num_actions2(i);
    s.probs[i].assign(n, 1.0 / n);
  }
  return s;
}

void check_strategy(const GameModel& m, const StationaryStrategy& s, int player) {
  if (static_cast<int>(s.probs.size()) != m.num_states())
    throw std::invalid_argument("strategy has wrong number of states");
  for (int i = 0; i < m.num_states(); ++i) {
    int n = (player == 1) ? m.num_actions1(i) : m.num_actions2(i);
    if (static_cast<int>(s.probs[i].size()) != n)
      throw std::invalid_argument("strategy row for state " + m.states[i] +
                                  " has wrong length");
    double sum = 0;
    for (double p : s.probs[i]) {
      if (p < 0) throw std::invalid_argument("negative probability in state " + m.states[i]);
      sum += p;
    }
    if (std::abs(sum - 1.0) > kMassTol)
      throw std::invalid_argument("strategy row for state " + m.states[i] +
                                  " sums to " + std::to_string(sum));
  }
}

double compute_m_rho(const GameModel& m, int player) {
  // 1025 equispaced samples on [0, B], endpoints included. Exact for
  // piecewise-monotone costs at this resolution; an approximation otherwise.
  constexpr int kSamples = 1025;
  double best = 0;
  for (int i = 0; i < m.num_states(); ++i) {
    for (int a = 0; a < m.num_actions1(i); ++a) {
      for (int b = 0; b < m.num_actions2(i); ++b) {
        const RunningCost& rc = m.running_cost(player, i, a, b);
        for (int k = 0; k < kSamples; ++k) {
          double t = m.horizon_bound * k / (kSamples - 1);
          best = std::max(best, std::abs(rc.eval(t)));
        }
      }
    }
  }
  return best;
}

namespace {

// Strong connectivity of the digraph on states given an edge predicate.
bool strongly_connected(int n, const std::function<bool(int, int)>& edge) {
  auto reach = [&](bool reverse) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        bool e = reverse ? edge(v, u) : edge(u, v);
        if (e && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
  };
  return reach(false) && reach(true);
}

// Solves A x = rhs by Gaussian elimination with partial pivoting.
// Returns false when A is (numerically) singular.
bool solve_linear(std::vector<std::vector<double>> A, std::vector<double> rhs,
                  std::vector<double>& x) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    if (std::abs(A[pivot][col]) < 1e-14) return false;
    std::swap(A[pivot], A[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      if (f == 0) continue;
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  x.resize(n);
  for (int r = 0; r < n; ++r) x[r] = rhs[r] / A[r][r];
  return true;
}

// Spectral radius of a nonnegative matrix by power iteration on M + I
// (the shift removes periodicity issues).
double nonneg_spectral_radius(const std::vector<std::vector<double>>& M) {
  const int n = static_cast<int>(M.size());
  std::vector<double> v(n, 1.0), w(n);
  double lambda = 0;
  for (int it = 0; it < 100000; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = v[i];
      for (int j = 0; j < n; ++j) s += M[i][j] * v[j];
      w[i] = s;
    }
    double norm = *std::max_element(w.begin(), w.end());
    if (norm == 0) return 0;
    for (int i = 0; i < n; ++i) w[i] /= norm;
    if (it > 0 && std::abs(norm - lambda) < 1e-13 * std::max(1.0, norm)) {
      return norm - 1.0;
    }
    lambda = norm;
    v.swap(w);
  }
  return lambda - 1.0;
}

// Enumerates pure stationary pairs as one (a, b) choice per state.
struct PurePairIter {
  const GameModel& m;
  std::vector<int> a, b;
  bool done = false;

  explicit PurePairIter(const GameModel& model)
      : m(model), a(model.num_states(), 0), b(model.num_states(), 0) {}

  bool next() {
    for (int i = 0; i < m.num_states(); ++i) {
      if (++b[i] < m.num_actions2(i)) return true;
      b[i] = 0;
      if (++a[i] < m.num_actions1(i)) return true;
      a[i] = 0;
    }
    return false;
  }
};

}  // namespace

ValidationReport validate(const GameModel& m) {
  ValidationReport rep;
  auto add = [&](std::string name, CheckStatus st, std::string detail) {
    rep.checks.push_back({std::move(name), st, std::move(detail)});
  };

  const int n = m.num_states();

  // --- hard structural invariants ---
  {
    CheckStatus st = CheckStatus::pass;
    std::string detail = "theta=" + std::to_string(m.theta);
    if (m.theta <= 0 || m.horizon_bound <= 0) {
      st = CheckStatus::fail;
      detail = "theta and horizon_bound must be positive";
    }
    add("positivity", st, detail);
  }
  {
    CheckStatus st = CheckStatus::pass;
    std::string detail = "all rows stochastic";
    for (int i = 0; i < n && st == CheckStatus::pass; ++i) {
      for (int a = 0; a < m.num_actions1(i) && st == CheckStatus::pass; ++a) {
        for (int b = 0; b < m.num_actions2(i); ++b) {
          double sum = 0;
          bool neg = false;
          for (int j = 0; j < n; ++j) {
            sum += m.transition[i][a][b][j];
            neg = neg || m.transition[i][a][b][j] < 0;
          }
          if (neg || std::abs(sum - 1.0) > kMassTol) {
            st = CheckStatus::fail;
            detail = "row (" + m.states[i] + "," + m.actions1[i][a] + "," +
                     m.actions2[i][b] + ") sums to " + std::to_string(sum);
            break;
          }
        }
      }
    }
    add("transition_stochasticity", st, detail);
  }
  {
    CheckStatus st = CheckStatus::pass;
    std::string detail = "support in (0, B], total mass 1";
    for (int i = 0; i < n && st == CheckStatus::pass; ++i) {
      for (int a = 0; a < m.num_actions1(i) && st == CheckStatus::pass; ++a) {
        for (int b = 0; b < m.num_actions2(i); ++b) {
          const SojournDist& d = m.sojourn[i][a][b];
          std::string bad;
          switch (d.kind) {
            case SojournDist::Kind::atoms: {
              double w = 0;
              for (auto& [s, wk] : d.atoms) {
                if (s <= 0 || s > m.horizon_bound) bad = "atom outside (0, B]";
                if (wk <= 0) bad = "nonpositive weight";
                w += wk;
              }
              if (bad.empty() && std::abs(w - 1.0) > kMassTol) bad = "mass != 1";
              break;
            }
            case SojournDist::Kind::uniform:
              if (d.lo < 0 || d.lo >= d.hi || d.hi > m.horizon_bound)
                bad = "uniform support outside [0, B]";
              break;
            case SojournDist::Kind::truncated_exponential:
              if (d.rate <= 0) bad = "nonpositive rate";
              break;
          }
          if (!bad.empty()) {
            st = CheckStatus::fail;
            detail = "sojourn (" + m.states[i] + "," + m.actions1[i][a] + "," +
                     m.actions2[i][b] + "): " + bad;
            break;
          }
        }
      }
    }
    add("sojourn_support", st, detail);
  }

  // --- M_rho ---
  double m_rho1 = compute_m_rho(m, 1);
  double m_rho2 = m.has_running_cost2 ? compute_m_rho(m, 2) : 0.0;
  rep.m_rho = std::max(m_rho1, m_rho2);

  // --- irreducibility ---
  long pure_pairs = 1;
  for (int i = 0; i < n; ++i) {
    pure_pairs *= static_cast<long>(m.num_actions1(i)) * m.num_actions2(i);
    if (pure_pairs > kPurePairCap) break;
  }
  if (pure_pairs <= kPurePairCap) {
    bool all_irreducible = true;
    std::string witness;
    PurePairIter it(m);
    do {
      auto edge = [&](int u, int v) {
        return m.transition[u][it.a[u]][it.b[u]][v] > 0;
      };
      if (!strongly_connected(n, edge)) {
        all_irreducible = false;
        witness = "pure pair with action (" + m.actions1[0][it.a[0]] + ",...)";
        break;
      }
    } while (it.next());
    rep.irreducibility_status = all_irreducible ? CheckStatus::pass : CheckStatus::fail;
    add("irreducibility", rep.irreducibility_status,
        all_irreducible
            ? "all " + std::to_string(pure_pairs) + " pure pairs irreducible"
            : "reducible embedded chain under " + witness);
  } else {
    // Sufficient condition: the uniformly-positive-edge graph is strongly
    // connected. Warn when it is not, since the exhaustive check is off.
    auto edge = [&](int u, int v) {
      double lo = 1.0;
      for (int a = 0; a < m.num_actions1(u); ++a)
        for (int b = 0; b < m.num_actions2(u); ++b)
          lo = std::min(lo, m.transition[u][a][b][v]);
      return lo > 0;
    };
    bool ok = strongly_connected(n, edge);
    rep.irreducibility_status = ok ? CheckStatus::pass : CheckStatus::warn;
    add("irreducibility", rep.irreducibility_status,
        ok ? "min-transition graph strongly connected (sufficient condition)"
           : "exhaustive check infeasible and sufficient condition inconclusive");
  }

  // --- reference-state first-passage moment (Assumption 3 heuristic) ---
  const double R = std::exp(2.0 * m.theta * m.horizon_bound * rep.m_rho);
  if (pure_pairs <= kPurePairCap) {
    double sup_moment = 0;
    bool finite = true;
    PurePairIter it(m);
    do {
      // u(i) = E_i[R^{tau*}] solves (I - R P~) u = R p(., i*), where P~ zeroes
      // the column of the reference state.
      std::vector<std::vector<double>> Pt(n, std::vector<double>(n, 0.0));
      std::vector<double> rhs(n, 0.0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double p = m.transition[i][it.a[i]][it.b[i]][j];
          if (j == m.reference_state)
            rhs[i] += R * p;
          else
            Pt[i][j] = R * p;
        }
      }
      if (nonneg_spectral_radius(Pt) >= 1.0 - 1e-12) {
        finite = false;
        break;
      }
      std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = (i == j ? 1.0 : 0.0) - Pt[i][j];
      std::vector<double> u;
      if (!solve_linear(A, rhs, u)) {
        finite = false;
        break;
      }
      for (double ui : u) sup_moment = std::max(sup_moment, ui);
    } while (it.next());
    rep.assumption3_status = finite ? CheckStatus::pass : CheckStatus::warn;
    std::ostringstream detail;
    if (finite) {
      detail << "R=" << R << ", sup E[R^tau*]=" << sup_moment;
    } else {
      detail << "R=" << R << ", E[R^tau*] diverges for some pure pair";
    }
    add("reference_first_passage", rep.assumption3_status, detail.str());
  } else {
    rep.assumption3_status = CheckStatus::warn;
    add("reference_first_passage", CheckStatus::warn,
        "pure pair enumeration infeasible (" + std::to_string(pure_pairs) + " pairs)");
  }

  return rep;
}

std::string validation_report_to_json(const ValidationReport& rep) {
  ordered_json doc;
  doc["schema_version"] = 1;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  doc["checks"] = std::move(checks);
  doc["m_rho"] = rep.m_rho;
  doc["irreducibility_status"] = to_string(rep.irreducibility_status);
  doc["assumption3_status"] = to_string(rep.assumption3_status);
  doc["overall"] = to_string(rep.overall());
  return doc.dump(2) + "\n";
}

}  // namespace rsgame
