#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsgame/matrix_game.hpp"
#include "rsgame/model.hpp"
#include "rsgame/nash.hpp"
#include "rsgame/oracle.hpp"
#include "rsgame/simulator.hpp"
#include "rsgame/threads.hpp"
#include "rsgame/transform.hpp"
#include "rsgame/zero_sum.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rsgame::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rsgame::GameModel load_model_file(const std::string& path) {
  return rsgame::load_model(read_file(path));
}

rsgame::StationaryStrategy load_strategy_file(const std::string& path,
                                              const rsgame::GameModel& model,
                                              int player) {
  return rsgame::load_strategy(read_file(path), model, player);
}

void emit(const std::string& json, const std::string& out_path) {
  std::cout << json;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw rsgame::ParseError("cannot write file: " + out_path);
    out << json;
  }
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  if (!doc.is_array()) throw rsgame::ParseError("matrix: expected array of rows");
  std::vector<std::vector<double>> m;
  for (const auto& row : doc) {
    if (!row.is_array()) throw rsgame::ParseError("matrix row: expected array");
    m.push_back(row.get<std::vector<double>>());
  }
  return m;
}

void export_trajectory_csv(const rsgame::Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rsgame::ParseError("cannot write file: " + path);
  out << "n,X,A,B,S,T\n";
  for (size_t n = 0; n < traj.records.size(); ++n) {
    const auto& r = traj.records[n];
    out << n << "," << r.state << "," << r.action1 << "," << r.action2 << ","
        << r.sojourn << "," << r.jump_time << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risk-sensitive average-cost semi-Markov game solver"};
  app.require_subcommand(1);

  int threads = 1;
  if (const char* env = std::getenv("RSGAME_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker thread cap (default 1)");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check a model file");
  std::string validate_model;
  validate_cmd->add_option("model", validate_model)->required();

  // solve-zs
  auto* zs_cmd = app.add_subcommand("solve-zs", "zero-sum saddle point");
  std::string zs_model, zs_out;
  double zs_tol = 1e-11;
  zs_cmd->add_option("model", zs_model)->required();
  zs_cmd->add_option("--tol", zs_tol, "bisection bracket width");
  zs_cmd->add_option("--out", zs_out, "also write the report to this file");

  // solve-nash
  auto* nash_cmd = app.add_subcommand("solve-nash", "non-zero-sum equilibrium");
  std::string nash_model, nash_init1, nash_init2, nash_out;
  double nash_damping = 0.5;
  int nash_max_iters = 500;
  nash_cmd->add_option("model", nash_model)->required();
  nash_cmd->add_option("--damping", nash_damping, "best-response damping in (0,1]");
  nash_cmd->add_option("--max-iters", nash_max_iters);
  nash_cmd->add_option("--init1", nash_init1, "initial strategy file, player 1");
  nash_cmd->add_option("--init2", nash_init2, "initial strategy file, player 2");
  nash_cmd->add_option("--out", nash_out, "also write the report to this file");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "policy-evaluation root of a fixed pair");
  std::string eval_model, eval_p1, eval_p2;
  int eval_player = 1;
  eval_cmd->add_option("model", eval_model)->required();
  eval_cmd->add_option("--p1", eval_p1)->required();
  eval_cmd->add_option("--p2", eval_p2)->required();
  eval_cmd->add_option("--player", eval_player)->check(CLI::Range(1, 2));

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo estimate of J");
  std::string sim_model, sim_p1, sim_p2, sim_csv;
  double sim_t = 100.0;
  long sim_paths = 10000;
  std::uint64_t sim_seed = 0;
  int sim_player = 1;
  bool sim_zero_sum = false, sim_no_zero_sum = false;
  sim_cmd->add_option("model", sim_model)->required();
  sim_cmd->add_option("--p1", sim_p1)->required();
  sim_cmd->add_option("--p2", sim_p2)->required();
  sim_cmd->add_option("--t", sim_t)->required();
  sim_cmd->add_option("--paths", sim_paths)->required();
  sim_cmd->add_option("--seed", sim_seed, "master seed (default 0)");
  sim_cmd->add_option("--player", sim_player)->check(CLI::Range(1, 2));
  sim_cmd->add_flag("--zero-sum", sim_zero_sum,
                    "include immediate costs at decision epochs");
  sim_cmd->add_flag("--no-zero-sum", sim_no_zero_sum, "running cost only");
  sim_cmd->add_option("--traj-csv", sim_csv, "export the first path as CSV");

  // tail
  auto* tail_cmd = app.add_subcommand("tail", "jump-count tail bound diagnostic");
  std::string tail_model;
  double tail_alpha = 0.5, tail_t = 20.0;
  long tail_paths = 10000;
  std::uint64_t tail_seed = 0;
  tail_cmd->add_option("model", tail_model)->required();
  tail_cmd->add_option("--alpha", tail_alpha)->required();
  tail_cmd->add_option("--t", tail_t)->required();
  tail_cmd->add_option("--paths", tail_paths)->required();
  tail_cmd->add_option("--seed", tail_seed, "master seed (default 0)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force references");
  oracle_cmd->require_subcommand(1);

  auto* ct_cmd = oracle_cmd->add_subcommand("cost-table", "transformed cost table");
  std::string ct_model;
  double ct_g = 0.0;
  int ct_player = 1;
  ct_cmd->add_option("model", ct_model)->required();
  ct_cmd->add_option("--g", ct_g);
  ct_cmd->add_option("--player", ct_player)->check(CLI::Range(1, 2));

  auto* gm_cmd = oracle_cmd->add_subcommand("grid-minimax", "simplex-grid minimax");
  std::string gm_matrix;
  int gm_points = 1001;
  gm_cmd->add_option("--matrix", gm_matrix, "JSON array of rows")->required();
  gm_cmd->add_option("--grid-points", gm_points);

  auto* sr_cmd = oracle_cmd->add_subcommand("spectral-radius", "Perron root");
  std::string sr_matrix;
  sr_cmd->add_option("--matrix", sr_matrix, "JSON array of rows")->required();

  auto* ec_cmd = oracle_cmd->add_subcommand("exp-cost",
                                            "finite-horizon exponential cost");
  std::string ec_model, ec_p1, ec_p2;
  int ec_n = 1, ec_start = -1, ec_player = 1;
  double ec_g = 0.0;
  ec_cmd->add_option("model", ec_model)->required();
  ec_cmd->add_option("--p1", ec_p1)->required();
  ec_cmd->add_option("--p2", ec_p2)->required();
  ec_cmd->add_option("--n", ec_n, "horizon in decision epochs")->required();
  ec_cmd->add_option("--start", ec_start, "start state index (default reference)");
  ec_cmd->add_option("--g", ec_g);
  ec_cmd->add_option("--player", ec_player)->check(CLI::Range(1, 2));

  CLI11_PARSE(app, argc, argv);

  try {
    rsgame::set_max_threads(threads);

    if (*validate_cmd) {
      rsgame::GameModel model = rsgame::load_model_lenient(read_file(validate_model));
      rsgame::ValidationReport report = rsgame::validate(model);
      std::cout << rsgame::validation_report_to_json(report);
      return report.overall() == rsgame::CheckStatus::fail ? 1 : 0;
    }

    if (*zs_cmd) {
      rsgame::GameModel model = load_model_file(zs_model);
      rsgame::ZeroSumReport report = rsgame::solve_zero_sum(model, zs_tol);
      emit(rsgame::zero_sum_report_to_json(model, report), zs_out);
      return 0;
    }

    if (*nash_cmd) {
      rsgame::GameModel model = load_model_file(nash_model);
      rsgame::StationaryStrategy i1, i2;
      const rsgame::StationaryStrategy* p1 = nullptr;
      const rsgame::StationaryStrategy* p2 = nullptr;
      if (!nash_init1.empty()) {
        i1 = load_strategy_file(nash_init1, model, 1);
        p1 = &i1;
      }
      if (!nash_init2.empty()) {
        i2 = load_strategy_file(nash_init2, model, 2);
        p2 = &i2;
      }
      rsgame::NashReport report =
          rsgame::solve_nash(model, p1, p2, nash_damping, nash_max_iters);
      emit(rsgame::nash_report_to_json(model, report), nash_out);
      if (!report.converged) {
        std::cerr << "best-response iteration did not converge in "
                  << report.iterations << " iterations\n";
        return 2;
      }
      return 0;
    }

    if (*eval_cmd) {
      rsgame::GameModel model = load_model_file(eval_model);
      rsgame::StationaryStrategy s1 = load_strategy_file(eval_p1, model, 1);
      rsgame::StationaryStrategy s2 = load_strategy_file(eval_p2, model, 2);
      double g = rsgame::evaluation_root(model, s1, s2, eval_player);
      nlohmann::ordered_json doc;
      doc["schema_version"] = 1;
      doc["g"] = g;
      doc["player"] = eval_player;
      doc["model_hash"] = rsgame::model_hash(model);
      std::cout << doc.dump(2) + "\n";
      return 0;
    }

    if (*sim_cmd) {
      rsgame::GameModel model = load_model_file(sim_model);
      rsgame::StationaryStrategy s1 = load_strategy_file(sim_p1, model, 1);
      rsgame::StationaryStrategy s2 = load_strategy_file(sim_p2, model, 2);
      bool zero_sum = model.has_immediate_cost;
      if (sim_zero_sum) zero_sum = true;
      if (sim_no_zero_sum) zero_sum = false;
      rsgame::JEstimate est =
          rsgame::estimate_J(model, s1, s2, model.reference_state, sim_t,
                             sim_paths, sim_seed, sim_player, zero_sum);
      if (!sim_csv.empty()) {
        rsgame::Trajectory traj = rsgame::simulate_trajectory(
            model, s1, s2, model.reference_state, sim_t, sim_seed);
        export_trajectory_csv(traj, sim_csv);
      }
      std::cout << rsgame::j_estimate_to_json(est, model);
      return 0;
    }

    if (*tail_cmd) {
      rsgame::GameModel model = load_model_file(tail_model);
      rsgame::TailReport report =
          rsgame::tail_diagnostic(model, tail_alpha, tail_t, tail_paths, tail_seed);
      std::cout << rsgame::tail_report_to_json(report, model);
      return 0;
    }

    if (*ct_cmd) {
      rsgame::GameModel model = load_model_file(ct_model);
      rsgame::CostTable table = rsgame::build_cost_table(model, ct_player, ct_g);
      std::cout << rsgame::cost_table_to_json(table, model);
      return 0;
    }

    if (*gm_cmd) {
      rsgame::MatrixGame game{parse_matrix(gm_matrix)};
      nlohmann::ordered_json doc;
      doc["schema_version"] = 1;
      doc["value"] = rsgame::oracle::grid_minimax(game, gm_points);
      doc["grid_points"] = gm_points;
      std::cout << doc.dump(2) + "\n";
      return 0;
    }

    if (*sr_cmd) {
      nlohmann::ordered_json doc;
      doc["schema_version"] = 1;
      doc["spectral_radius"] = rsgame::oracle::spectral_radius(parse_matrix(sr_matrix));
      std::cout << doc.dump(2) + "\n";
      return 0;
    }

    if (*ec_cmd) {
      rsgame::GameModel model = load_model_file(ec_model);
      rsgame::StationaryStrategy s1 = load_strategy_file(ec_p1, model, 1);
      rsgame::StationaryStrategy s2 = load_strategy_file(ec_p2, model, 2);
      int start = ec_start >= 0 ? ec_start : model.reference_state;
      rsgame::CostTable table = rsgame::build_cost_table(model, ec_player, ec_g);
      nlohmann::ordered_json doc;
      doc["schema_version"] = 1;
      doc["log_expectation"] =
          rsgame::oracle::exact_exp_cost(model, table, s1, s2, start, ec_n);
      doc["n"] = ec_n;
      doc["start"] = start;
      doc["g"] = ec_g;
      doc["model_hash"] = rsgame::model_hash(model);
      std::cout << doc.dump(2) + "\n";
      return 0;
    }
  } catch (const rsgame::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const rsgame::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 64;
}
