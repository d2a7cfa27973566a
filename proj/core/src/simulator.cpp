#include "rsgame/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "internal_math.hpp"
#include "json.hpp"
#include "rsgame/transform.hpp"
#include "rsgame/threads.hpp"

namespace rsgame {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

  int categorical(const std::vector<double>& probs) {
    double u = uniform();
    double acc = 0;
    for (size_t k = 0; k < probs.size(); ++k) {
      acc += probs[k];
      if (u < acc) return static_cast<int>(k);
    }
    // round-off: return the last index with positive mass
    for (size_t k = probs.size(); k-- > 0;)
      if (probs[k] > 0) return static_cast<int>(k);
    return 0;
  }
};

double sample_sojourn(const SojournDist& d, double B, Rng& rng) {
  switch (d.kind) {
    case SojournDist::Kind::atoms: {
      double total = 0;
      for (const auto& [loc, w] : d.atoms) total += w;
      double u = rng.uniform() * total;
      double acc = 0;
      for (const auto& [loc, w] : d.atoms) {
        acc += w;
        if (u < acc) return loc;
      }
      return d.atoms.back().first;
    }
    case SojournDist::Kind::uniform:
      return d.lo + rng.uniform() * (d.hi - d.lo);
    case SojournDist::Kind::truncated_exponential: {
      double u = rng.uniform();
      return -std::log1p(-u * (1.0 - std::exp(-d.rate * B))) / d.rate;
    }
  }
  return B;
}

}  // namespace

Trajectory simulate_trajectory(const GameModel& model,
                               const StationaryStrategy& strategy1,
                               const StationaryStrategy& strategy2,
                               int start_state, double t_max,
                               std::uint64_t seed) {
  if (t_max <= 0) throw std::invalid_argument("t_max must be positive");
  Rng rng(seed);
  Trajectory traj;
  traj.t_max = t_max;

  int i = start_state;
  double t = 0;
  while (true) {
    int a = rng.categorical(strategy1.probs[i]);
    int b = rng.categorical(strategy2.probs[i]);
    double s = sample_sojourn(model.sojourn[i][a][b], model.horizon_bound, rng);
    traj.records.push_back({i, a, b, s, t});
    if (t + s > t_max) break;
    t += s;
    i = rng.categorical(model.transition[i][a][b]);
  }
  traj.n_t = static_cast<int>(traj.records.size()) - 1;
  return traj;
}

double accumulate_cost(const GameModel& model, const Trajectory& traj, int player,
                       bool zero_sum) {
  double total = 0;
  for (int n = 0; n <= traj.n_t; ++n) {
    const auto& r = traj.records[n];
    double upto = n < traj.n_t ? r.sojourn : traj.t_max - r.jump_time;
    total +=
        integrated_running_cost(model, player, r.state, r.action1, r.action2, upto);
    if (zero_sum && model.has_immediate_cost)
      total += model.immediate_cost[r.state][r.action1][r.action2];
  }
  return total;
}

JEstimate estimate_J(const GameModel& model, const StationaryStrategy& strategy1,
                     const StationaryStrategy& strategy2, int start_state,
                     double t, long n_paths, std::uint64_t seed, int player,
                     bool zero_sum) {
  if (n_paths < 100) throw std::invalid_argument("n_paths must be >= 100");
  check_strategy(model, strategy1, 1);
  check_strategy(model, strategy2, 2);
  const double theta = model.theta;

  std::vector<double> log_terms(n_paths);  // theta * C_t per path
  const std::uint64_t stream = splitmix64(seed);
  parallel_for(static_cast<int>(n_paths), [&](int p) {
    std::uint64_t path_seed = splitmix64(stream + static_cast<std::uint64_t>(p));
    Trajectory traj =
        simulate_trajectory(model, strategy1, strategy2, start_state, t, path_seed);
    log_terms[p] = theta * accumulate_cost(model, traj, player, zero_sum);
  });
  for (double x : log_terms)
    if (!std::isfinite(x))
      throw SolverError(
          "pathwise exponential cost overflowed; reduce theta * t");

  double n = static_cast<double>(n_paths);
  double l1 = detail::logsumexp(log_terms) - std::log(n);  // ln mean e^{theta C}
  std::vector<double> doubled(log_terms);
  for (double& x : doubled) x *= 2;
  double l2 = detail::logsumexp(doubled) - std::log(n);  // ln mean e^{2 theta C}

  // Delta method: Var(ln m-hat) ~ (m2/m1^2 - 1)/n, evaluated in log space.
  double ratio = std::expm1(l2 - 2 * l1);
  double se = std::sqrt(std::max(0.0, ratio) / n);
  constexpr double z99 = 2.5758293035489004;

  JEstimate est;
  est.n_paths = n_paths;
  est.t = t;
  est.seed = seed;
  est.log_mean = l1;
  est.point = l1 / (theta * t);
  est.ci99 = {(l1 - z99 * se) / (theta * t), (l1 + z99 * se) / (theta * t)};
  return est;
}

namespace {

// sup over (i,a,b) of the Laplace transform of the sojourn law at r.
double sup_laplace(const GameModel& model, double r) {
  double sup = 0;
  for (int i = 0; i < model.num_states(); ++i) {
    for (int a = 0; a < model.num_actions1(i); ++a) {
      for (int b = 0; b < model.num_actions2(i); ++b) {
        const SojournDist& d = model.sojourn[i][a][b];
        double v = 0;
        switch (d.kind) {
          case SojournDist::Kind::atoms:
            for (const auto& [loc, w] : d.atoms) v += w * std::exp(-r * loc);
            break;
          case SojournDist::Kind::uniform:
            v = (std::exp(-r * d.lo) - std::exp(-r * d.hi)) / (r * (d.hi - d.lo));
            break;
          case SojournDist::Kind::truncated_exponential: {
            double B = model.horizon_bound, lam = d.rate;
            v = lam / (lam + r) * (-std::expm1(-(lam + r) * B)) /
                (-std::expm1(-lam * B));
            break;
          }
        }
        sup = std::max(sup, v);
      }
    }
  }
  return sup;
}

}  // namespace

TailReport tail_diagnostic(const GameModel& model, double alpha, double t,
                           long n_paths, std::uint64_t seed) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha in (0,1)");
  TailReport report;
  report.alpha = alpha;
  report.t = t;
  report.n_paths = n_paths;

  int r = 1;
  while (sup_laplace(model, static_cast<double>(r)) > alpha) {
    if (++r > 100000) throw SolverError("tail exponent r_alpha not found");
  }
  report.r_alpha = r;

  StationaryStrategy u1 = uniform_strategy(model, 1);
  StationaryStrategy u2 = uniform_strategy(model, 2);
  std::vector<int> counts(n_paths);
  const std::uint64_t stream = splitmix64(seed);
  parallel_for(static_cast<int>(n_paths), [&](int p) {
    std::uint64_t path_seed = splitmix64(stream + static_cast<std::uint64_t>(p));
    counts[p] = simulate_trajectory(model, u1, u2, model.reference_state, t,
                                    path_seed)
                    .n_t;
  });
  int max_n = *std::max_element(counts.begin(), counts.end());

  double n_d = static_cast<double>(n_paths);
  for (int n = 1; n <= max_n; ++n) {
    long tail = 0;
    for (int c : counts)
      if (c >= n) ++tail;
    double emp = static_cast<double>(tail) / n_d;
    double log_bound = n * std::log(alpha) + r * t;
    double bound = log_bound > 700 ? std::numeric_limits<double>::infinity()
                                   : std::exp(log_bound);
    double se = std::sqrt(emp * (1 - emp) / n_d);
    bool flagged = emp > bound + 3 * se;
    if (flagged) ++report.violations;
    report.rows.push_back({n, emp, bound, flagged});
  }
  return report;
}

std::string j_estimate_to_json(const JEstimate& est, const GameModel& model) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["point"] = est.point;
  doc["ci99"] = nlohmann::ordered_json::array({est.ci99.first, est.ci99.second});
  doc["ci_method"] = "delta-method on the log-mean (approximate)";
  doc["n_paths"] = est.n_paths;
  doc["t"] = est.t;
  doc["log_mean"] = est.log_mean;
  doc["seed"] = est.seed;
  doc["model_hash"] = model_hash(model);
  return doc.dump(2) + "\n";
}

std::string tail_report_to_json(const TailReport& report, const GameModel& model) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["alpha"] = report.alpha;
  doc["r_alpha"] = report.r_alpha;
  doc["t"] = report.t;
  doc["n_paths"] = report.n_paths;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["empirical"] = row.empirical;
    r["bound"] = row.bound;
    r["flagged"] = row.flagged;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["violations"] = report.violations;
  doc["model_hash"] = model_hash(model);
  return doc.dump(2) + "\n";
}

}  // namespace rsgame
