// frgame: solver and simulator CLI for the FL free-rider game.
// Subcommands: solve, sweep, fictitious, reward-table.
// Exit codes: 0 ok, 2 parse/config error, 3 solver non-convergence,
// 4 resource cap exceeded, 1 anything else.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frgame/equilibrium.hpp"
#include "frgame/error.hpp"
#include "frgame/fedavg.hpp"
#include "frgame/fictitious_play.hpp"
#include "frgame/game.hpp"
#include "frgame/parallel.hpp"
#include "frgame/serialization.hpp"

namespace {

using namespace frgame;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitResource = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

std::string format_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_profile(const StrategyProfile& p) {
  std::string out = "(";
  for (int i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_value(p[i]);
  }
  return out + ")";
}

// A game file is either a GameSpec (inline rewards or a "table_file"
// reference) or a bare accuracy-table file combined with --cost.
GameSpec load_game_input(const std::string& path, std::optional<double> cost) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(path) + ": " + e.what());
  }
  const auto base_dir = std::filesystem::path(path).parent_path();

  if (j.contains("rows") && j.contains("mode")) {
    const AccuracyTable table = accuracy_table_from_json(text);
    if (!cost) {
      throw ParseError(path + " is an accuracy table; pass --cost to build a game from it");
    }
    GameSpec game;
    game.n_clients = table.n_clients;
    game.costs.assign(static_cast<std::size_t>(table.n_clients), *cost);
    game.rewards = reward_table_from_accuracy(table, table.n_clients);
    game.validate();
    return game;
  }

  if (j.contains("rewards") && j.at("rewards").is_object() &&
      j.at("rewards").value("kind", "") == "table_file") {
    GameSpec game;
    try {
      game.n_clients = j.at("n_clients").get<int>();
      game.costs = j.at("costs").get<std::vector<double>>();
      const std::string rel = j.at("rewards").at("path").get<std::string>();
      const AccuracyTable table = load_accuracy_table((base_dir / rel).string());
      game.rewards = reward_table_from_accuracy(table, game.n_clients);
    } catch (const json::exception& e) {
      throw ParseError(std::string(path) + ": " + e.what());
    }
    game.validate();
    return game;
  }

  GameSpec game = game_from_json(text);
  if (cost) game.costs.assign(static_cast<std::size_t>(game.n_clients), *cost);
  return game;
}

struct TableWriter {
  std::ofstream out;
  explicit TableWriter(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw GameError("cannot open " + path + " for writing");
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }
  void comment(const std::string& line) { out << "# " << line << '\n'; }
};

std::string describe_equilibrium(const EquilibriumResult& eq) {
  std::ostringstream oss;
  switch (eq.kind) {
    case EquilibriumResult::Kind::Pure:
      oss << "pure " << format_profile(eq.profile);
      break;
    case EquilibriumResult::Kind::Mixed:
      oss << "mixed " << format_profile(eq.profile);
      break;
    case EquilibriumResult::Kind::MixedFamily: {
      const MixedFamilySegment& f = *eq.family;
      oss << "family: client " << f.free_client << " free in [" << format_value(f.lo) << ", "
          << format_value(f.hi) << "], others fixed at ";
      StrategyProfile fixed = f.fixed;
      oss << format_profile(fixed) << " (free coordinate shown at its lower endpoint)";
      break;
    }
  }
  return oss.str();
}

// Iteration with damping escalation: the default factor handles most games;
// stubborn partially-mixed cases need smaller steps.
IterationResult solve_by_iteration(const GameSpec& game) {
  const StrategyProfile start(
      std::vector<double>(static_cast<std::size_t>(game.n_clients), 0.5));
  IterationResult it = best_response_iteration(game, start);
  if (!it.converged) it = best_response_iteration(game, start, 0.2);
  if (!it.converged) it = best_response_iteration(game, start, 0.1, 30000);
  return it;
}

// Reference equilibrium for gap reporting: the symmetric root for symmetric
// games, otherwise the first verified closed-form/iterated equilibrium.
EquilibriumResult reference_equilibrium(const GameSpec& game, int* exit_code) {
  if (game.is_symmetric()) return symmetric_equilibrium(game).equilibrium;
  if (game.n_clients == 2) {
    const TwoPlayerSolveResult r = two_player_equilibria(game);
    if (!r.equilibria.empty()) return r.equilibria.front();
  }
  const IterationResult it = solve_by_iteration(game);
  if (!it.converged) {
    std::cerr << "best-response iteration did not converge after " << it.iterations
              << " iterations; final profile " << format_profile(it.final_profile) << "\n";
    *exit_code = kExitNonConvergence;
    return make_equilibrium_result(game, it.final_profile);
  }
  return it.equilibrium;
}

int cmd_solve(const std::string& game_path, std::optional<double> cost, const std::string& out_path,
              double grid_step, double epsilon) {
  const GameSpec game = load_game_input(game_path, cost);
  std::vector<EquilibriumResult> equilibria;
  bool degenerate = false;

  if (game.n_clients == 2) {
    TwoPlayerSolveResult r = two_player_equilibria(game);
    equilibria = std::move(r.equilibria);
    degenerate = r.degenerate_mixed;
  } else if (game.is_symmetric()) {
    SymmetricSolveResult r = symmetric_equilibrium(game);
    if (r.multiple_roots) {
      std::cout << "note: multiple symmetric mixed roots:";
      for (const double p : r.all_p) std::cout << ' ' << format_value(p);
      std::cout << "\n";
    }
    equilibria.push_back(std::move(r.equilibrium));
  } else {
    const IterationResult it = solve_by_iteration(game);
    if (!it.converged) {
      std::cerr << "best-response iteration did not converge after " << it.iterations
                << " iterations; final profile " << format_profile(it.final_profile) << "\n";
      return kExitNonConvergence;
    }
    equilibria.push_back(it.equilibrium);
  }

  std::cout << "clients: " << game.n_clients << "\n";
  for (std::size_t i = 0; i < equilibria.size(); ++i) {
    const VerifyResult check = verify_equilibrium(game, equilibria[i].profile, epsilon);
    std::cout << "equilibrium " << i + 1 << ": " << describe_equilibrium(equilibria[i])
              << "  [deviation check: " << (check.pass ? "pass" : "FAIL")
              << ", worst gain " << format_value(check.worst_gain) << "]\n";
  }
  if (degenerate) {
    std::cout << "note: interior mixed point undefined (degenerate denominator); "
                 "pure/boundary equilibria reported\n";
  }

  const GlobalOptimum opt = global_optimum(game, grid_step);
  std::cout << "global optimum: " << format_profile(opt.profile)
            << " total " << format_value(opt.total) << "\n";

  int exit_code = kExitOk;
  const EquilibriumResult ref = reference_equilibrium(game, &exit_code);
  std::cout << "reference NE: " << format_profile(ref.profile) << " total "
            << format_value(total_utility(game, ref.profile)) << "\n";
  const double gap = optimality_gap(game, ref, opt);
  std::cout << "optimality gap: " << format_value(gap * 100.0) << "%\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw GameError("cannot open " + out_path + " for writing");
    out << solve_report_to_json(equilibria, opt, gap);
  }
  return exit_code;
}

std::vector<double> saturating_curve(double a0, double amax, double gamma, int n) {
  std::vector<double> curve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    curve[static_cast<std::size_t>(k)] = amax - (amax - a0) * std::pow(gamma, k);
  }
  return curve;
}

struct SweepRow {
  double value = 0.0;
  double ne_p = 0.0, opt_p = 0.0, ne_total = 0.0, opt_total = 0.0;
  double per_client = 0.0, gap = 0.0;
  bool failed = false;
  std::string error;
};

int cmd_sweep(const std::string& sweep_path, const std::string& out_path, double grid_step) {
  const std::string text = read_file(sweep_path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(sweep_path + ": " + std::string(e.what()));
  }
  const auto base_dir = std::filesystem::path(sweep_path).parent_path();
  const std::string hash = config_hash(j.dump());

  std::string parameter;
  std::string reward_source;
  std::vector<GameSpec> games;
  std::vector<double> values;
  try {
    parameter = j.at("parameter").get<std::string>();
    if (parameter == "cost") {
      const double from = j.at("from").get<double>();
      const double to = j.at("to").get<double>();
      const double step = j.at("step").get<double>();
      if (!(step > 0.0) || from > to) throw ParseError("sweep needs step > 0 and from <= to");
      std::vector<double> curve;
      if (j.contains("curve")) {
        curve = j.at("curve").get<std::vector<double>>();
        reward_source = "inline_curve";
      } else if (j.contains("accuracy_file")) {
        const AccuracyTable t =
            load_accuracy_table((base_dir / j.at("accuracy_file").get<std::string>()).string());
        if (t.mode != AccuracyTable::Mode::ByCount)
          throw ParseError("cost sweeps need a by-count accuracy table");
        curve = t.mean;
        reward_source = "accuracy_file " + j.at("accuracy_file").get<std::string>();
      } else {
        throw ParseError("cost sweep needs \"curve\" or \"accuracy_file\"");
      }
      const int n = static_cast<int>(curve.size()) - 1;
      if (n < 1) throw ParseError("curve must cover at least one client");
      const int steps = static_cast<int>(std::floor((to - from) / step + 1e-9));
      for (int s = 0; s <= steps; ++s) {
        const double c = from + s * step;
        GameSpec game;
        game.n_clients = n;
        game.costs.assign(static_cast<std::size_t>(n), c);
        game.rewards = RewardModel::symmetric_curve(curve);
        game.validate();
        values.push_back(c);
        games.push_back(std::move(game));
      }
    } else if (parameter == "n_clients") {
      const std::vector<int> ns = j.at("values").get<std::vector<int>>();
      const double cost = j.at("cost").get<double>();
      for (const int n : ns) {
        if (n < 2) throw ParseError("n_clients sweep values must be >= 2");
        std::vector<double> curve;
        if (j.contains("curve_family")) {
          const json& fam = j.at("curve_family");
          curve = saturating_curve(fam.at("a0").get<double>(), fam.at("amax").get<double>(),
                                   fam.at("gamma").get<double>(), n);
          reward_source = "curve_family a0=" + format_value(fam.at("a0").get<double>()) +
                          " amax=" + format_value(fam.at("amax").get<double>()) +
                          " gamma=" + format_value(fam.at("gamma").get<double>());
        } else if (j.contains("accuracy_files")) {
          const std::string rel = j.at("accuracy_files").at(std::to_string(n)).get<std::string>();
          const AccuracyTable t = load_accuracy_table((base_dir / rel).string());
          if (t.mode != AccuracyTable::Mode::ByCount || static_cast<int>(t.mean.size()) < n + 1)
            throw ParseError("accuracy table for N = " + std::to_string(n) + " is unusable");
          curve.assign(t.mean.begin(), t.mean.begin() + n + 1);
          reward_source = "accuracy_files";
        } else {
          throw ParseError(
              "n_clients sweep needs \"curve_family\" (a0, amax, gamma) or \"accuracy_files\"; "
              "rewards for unseen N are not invented");
        }
        GameSpec game;
        game.n_clients = n;
        game.costs.assign(static_cast<std::size_t>(n), cost);
        game.rewards = RewardModel::symmetric_curve(curve);
        game.validate();
        values.push_back(static_cast<double>(n));
        games.push_back(std::move(game));
      }
    } else {
      throw ParseError("parameter must be \"cost\" or \"n_clients\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(sweep_path + ": " + std::string(e.what()));
  }

  std::vector<SweepRow> rows(values.size());
  parallel_for(static_cast<int>(values.size()), [&](int idx) {
    SweepRow& row = rows[static_cast<std::size_t>(idx)];
    row.value = values[static_cast<std::size_t>(idx)];
    const GameSpec& game = games[static_cast<std::size_t>(idx)];
    try {
      const SymmetricSolveResult ne = symmetric_equilibrium(game);
      const GlobalOptimum opt = global_optimum(game, grid_step);
      row.ne_p = ne.p_star;
      row.opt_p = opt.profile[0];
      row.ne_total = total_utility(game, ne.equilibrium.profile);
      row.opt_total = opt.total;
      row.per_client = row.ne_total / game.n_clients;
      row.gap = optimality_gap(game, ne.equilibrium, opt);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  TableWriter w(out_path);
  w.comment("frgame sweep parameter=" + parameter + " rewards=" + reward_source +
            " config_hash=" + hash);
  w.row({parameter, "ne_p", "opt_p", "ne_total", "opt_total", "ne_utility_per_client", "gap",
         "config_hash"});
  for (const SweepRow& row : rows) {
    if (row.failed) {
      w.row({format_value(row.value), "nan", "nan", "nan", "nan", "nan", "nan", hash});
      std::cerr << "row " << format_value(row.value) << " failed: " << row.error << "\n";
      continue;
    }
    w.row({format_value(row.value), format_value(row.ne_p), format_value(row.opt_p),
           format_value(row.ne_total), format_value(row.opt_total), format_value(row.per_client),
           format_value(row.gap), hash});
  }

  // Monotonicity diagnostics over the swept parameter, plus the location of
  // the worst optimality gap (for cost sweeps: the cost c* of maximum loss).
  double ne_p_violation = 0.0, gap_violation = 0.0;
  double worst_gap = -1.0, worst_gap_at = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].failed) continue;
    if (rows[i].gap > worst_gap) {
      worst_gap = rows[i].gap;
      worst_gap_at = rows[i].value;
    }
    if (i == 0 || rows[i - 1].failed) continue;
    ne_p_violation = std::max(ne_p_violation, rows[i - 1].ne_p - rows[i].ne_p);
    gap_violation = std::max(gap_violation, rows[i - 1].gap - rows[i].gap);
  }
  std::ostringstream diag;
  diag << "max_ne_p_monotonicity_violation=" << format_value(ne_p_violation);
  if (parameter == "n_clients") diag << " max_gap_monotonicity_violation=" << format_value(gap_violation);
  if (worst_gap >= 0.0) {
    diag << " max_gap=" << format_value(worst_gap) << " at_" << parameter << "="
         << format_value(worst_gap_at);
  }
  w.comment(diag.str());
  std::cout << rows.size() << " rows -> " << out_path << "\n# " << diag.str() << "\n";
  return kExitOk;
}

int cmd_fictitious(const std::string& game_path, std::optional<double> cost, int rounds,
                   std::uint64_t seed, const std::string& out_path) {
  const GameSpec game = load_game_input(game_path, cost);
  FictitiousPlayConfig cfg;
  cfg.max_rounds = rounds;
  cfg.seed = seed;
  const FictitiousPlayResult r = fp_run(game, cfg);

  const std::string hash =
      config_hash(game_to_json(game) + "|rounds=" + std::to_string(rounds) +
                  "|seed=" + std::to_string(seed));
  if (!out_path.empty()) {
    TableWriter w(out_path);
    std::vector<std::string> header{"round"};
    for (int i = 0; i < game.n_clients; ++i) header.push_back("ptilde_" + std::to_string(i + 1));
    header.push_back("config_hash");
    w.row(header);
    for (std::size_t t = 0; t < r.trajectory.size(); ++t) {
      std::vector<std::string> cells{std::to_string(t + 1)};
      for (const double b : r.trajectory[t]) cells.push_back(format_value(b));
      cells.push_back(hash);
      w.row(cells);
    }
  }

  std::cout << "rounds played: " << r.rounds << (r.converged ? " (converged)" : " (not converged)")
            << "\n";
  std::cout << "final beliefs: " << format_profile(StrategyProfile(r.final_beliefs)) << "\n";

  int exit_code = kExitOk;
  const EquilibriumResult ref = reference_equilibrium(game, &exit_code);
  exit_code = kExitOk;  // reference failure must not fail the run verdict
  double gap = 0.0;
  if (game.n_clients == 2) {
    // distance to the nearest equilibrium of the closed-form set
    const TwoPlayerSolveResult all = two_player_equilibria(game);
    gap = 1e9;
    for (const EquilibriumResult& eq : all.equilibria) {
      double d;
      if (eq.family) {
        const MixedFamilySegment& f = *eq.family;
        const int other = 1 - f.free_client;
        const double free_val = r.final_beliefs[static_cast<std::size_t>(f.free_client)];
        const double other_val = r.final_beliefs[static_cast<std::size_t>(other)];
        d = std::max(std::abs(other_val - f.fixed[other]),
                     std::max(0.0, std::max(f.lo - free_val, free_val - f.hi)));
      } else {
        d = 0.0;
        for (int i = 0; i < 2; ++i) {
          d = std::max(d, std::abs(eq.profile[i] - r.final_beliefs[static_cast<std::size_t>(i)]));
        }
      }
      gap = std::min(gap, d);
    }
    std::cout << "closed-form equilibria:";
    for (const EquilibriumResult& eq : all.equilibria) std::cout << "  " << describe_equilibrium(eq);
    std::cout << "\n";
  } else {
    gap = 0.0;
    for (int i = 0; i < game.n_clients; ++i) {
      gap = std::max(gap, std::abs(ref.profile[i] - r.final_beliefs[static_cast<std::size_t>(i)]));
    }
    std::cout << "reference NE: " << format_profile(ref.profile) << "\n";
  }
  std::cout << "belief-to-NE gap: " << format_value(gap) << "\n";
  std::cout << "equilibrium check at 0.02: " << (r.equilibrium_verified ? "pass" : "fail")
            << " (worst gain " << format_value(r.worst_deviation_gain) << ")\n";
  return exit_code;
}

int cmd_reward_table(const std::string& fl_config_path, const std::string& parametric,
                     const std::string& out_path) {
  AccuracyTable table;
  const auto t0 = std::chrono::steady_clock::now();
  if (!parametric.empty()) {
    std::vector<double> curve;
    std::stringstream ss(parametric);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        curve.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ParseError("bad parametric value: " + item);
      }
    }
    table = parametric_curve(curve);
    table.config_hash = config_hash("parametric:" + parametric);
  } else {
    const std::string text = read_file(fl_config_path);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(fl_config_path + ": " + std::string(e.what()));
    }
    FlConfig cfg;
    int n_clients = 0;
    AccuracyTable::Mode mode = AccuracyTable::Mode::ByCount;
    try {
      n_clients = j.at("n_clients").get<int>();
      if (j.value("mode", "by_count") == "by_subset") mode = AccuracyTable::Mode::BySubset;
      cfg.rounds = j.value("rounds", cfg.rounds);
      cfg.epochs_local = j.value("epochs_local", cfg.epochs_local);
      cfg.samples_per_client = j.value("samples_per_client", cfg.samples_per_client);
      if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      if (j.contains("channel")) {
        const json& ch = j.at("channel");
        cfg.channel.snr_db_min = ch.value("snr_db_min", cfg.channel.snr_db_min);
        cfg.channel.snr_db_max = ch.value("snr_db_max", cfg.channel.snr_db_max);
        cfg.channel.phase_jitter_bound = ch.value("phase_jitter_bound", cfg.channel.phase_jitter_bound);
        cfg.channel.phase_update_period = ch.value("phase_update_period", cfg.channel.phase_update_period);
        cfg.channel.seed = ch.value("seed", cfg.channel.seed);
      }
      if (j.contains("adam")) {
        const json& ad = j.at("adam");
        cfg.adam.learning_rate = ad.value("learning_rate", cfg.adam.learning_rate);
        cfg.adam.batch_size = ad.value("batch_size", cfg.adam.batch_size);
      }
      if (j.contains("classifier")) {
        const json& cl = j.at("classifier");
        cfg.classifier.hidden_dim = cl.value("hidden_dim", cfg.classifier.hidden_dim);
        cfg.classifier.dropout_rate = cl.value("dropout_rate", cfg.classifier.dropout_rate);
      }
    } catch (const json::exception& e) {
      throw ParseError(fl_config_path + ": " + std::string(e.what()));
    }
    table = build_accuracy_table(n_clients, mode, cfg);
  }
  const auto t1 = std::chrono::steady_clock::now();
  save_accuracy_table(table, out_path);

  std::cout << "accuracy table -> " << out_path << "\n";
  if (table.mode == AccuracyTable::Mode::ByCount) {
    for (std::size_t k = 0; k < table.mean.size(); ++k) {
      std::cout << "A(" << k << ") = " << format_value(table.mean[k]) << " +- "
                << format_value(k < table.stddev.size() ? table.stddev[k] : 0.0) << "\n";
    }
  } else {
    for (const auto& [mask, mean] : table.subset_mean) {
      std::cout << "A(subset " << mask << ") = " << format_value(mean) << "\n";
    }
  }
  std::cout << "wall time: "
            << format_value(std::chrono::duration<double>(t1 - t0).count()) << " s\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-rider game solver and FL reward simulator"};
  app.require_subcommand(1);

  std::string game_path, sweep_path, out_path, fl_config, parametric;
  double grid_step = 0.01;
  double epsilon = 1e-4;
  int rounds = 10000;
  std::uint64_t seed = 0;
  std::optional<double> cost;
  double cost_raw = 0.0;

  CLI::App* solve = app.add_subcommand("solve", "equilibria, global optimum, optimality gap");
  solve->add_option("--game", game_path, "game file (or accuracy table with --cost)")->required();
  auto* solve_cost = solve->add_option("--cost", cost_raw, "common cost when --game is an accuracy table");
  solve->add_option("--out", out_path, "write a JSON report");
  solve->add_option("--grid-step", grid_step, "global-optimum grid step");
  solve->add_option("--epsilon", epsilon, "deviation-check tolerance");

  CLI::App* sweep = app.add_subcommand("sweep", "cost or client-count sweep table");
  sweep->add_option("--sweep", sweep_path, "sweep spec file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--grid-step", grid_step, "global-optimum grid step");

  CLI::App* fict = app.add_subcommand("fictitious", "fictitious-play run and trajectory");
  fict->add_option("--game", game_path, "game file")->required();
  auto* fict_cost = fict->add_option("--cost", cost_raw, "common cost when --game is an accuracy table");
  fict->add_option("--rounds", rounds, "maximum rounds");
  fict->add_option("--seed", seed, "rng seed");
  fict->add_option("--out", out_path, "trajectory CSV path");

  CLI::App* table = app.add_subcommand("reward-table", "build an accuracy table (FL or parametric)");
  table->add_option("--fl-config", fl_config, "FL simulation config file");
  table->add_option("--parametric", parametric, "comma list A(0),A(1),...");
  table->add_option("--out", out_path, "output table path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (solve_cost->count() > 0) cost = cost_raw;
      return cmd_solve(game_path, cost, out_path, grid_step, epsilon);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_path, out_path, grid_step);
    }
    if (fict->parsed()) {
      if (fict_cost->count() > 0) cost = cost_raw;
      return cmd_fictitious(game_path, cost, rounds, seed, out_path);
    }
    if (table->parsed()) {
      if (fl_config.empty() == parametric.empty()) {
        std::cerr << "reward-table needs exactly one of --fl-config or --parametric\n";
        return kExitParse;
      }
      return cmd_reward_table(fl_config, parametric, out_path);
    }
  } catch (const InstanceTooLargeError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
