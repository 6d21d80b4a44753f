#include "frgame/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frgame/error.hpp"

namespace frgame {

using nlohmann::json;

namespace {

json profile_to_json(const StrategyProfile& p) { return json(p.probs); }

json rewards_to_json(const RewardModel& rewards) {
  json j;
  if (rewards.is_symmetric()) {
    j["kind"] = "symmetric";
    j["curve"] = rewards.curve();
  } else {
    j["kind"] = "subset";
    std::vector<RewardEntry> entries = rewards.entries();
    std::sort(entries.begin(), entries.end(), [](const RewardEntry& a, const RewardEntry& b) {
      if (a.client != b.client) return a.client < b.client;
      if (a.role != b.role) return static_cast<int>(a.role) < static_cast<int>(b.role);
      return a.participants < b.participants;
    });
    json table = json::array();
    for (const RewardEntry& e : entries) {
      std::vector<int> ids;
      for (int c = 0; c < kMaxMaskClients; ++c) {
        if (e.participants & (ClientMask{1} << c)) ids.push_back(c);
      }
      table.push_back({{"client", e.client},
                       {"role", std::string(1, role_char(e.role))},
                       {"participants", ids},
                       {"value", e.value}});
    }
    j["table"] = table;
  }
  return j;
}

RewardModel rewards_from_json(const json& j, int n_clients) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "symmetric") {
    return RewardModel::symmetric_curve(j.at("curve").get<std::vector<double>>());
  }
  if (kind != "subset") throw ParseError("rewards.kind must be \"symmetric\" or \"subset\"");
  std::vector<RewardEntry> entries;
  for (const auto& row : j.at("table")) {
    RewardEntry e{};
    e.client = row.at("client").get<int>();
    const std::string role = row.at("role").get<std::string>();
    if (role == "F") {
      e.role = Role::FreeRider;
    } else if (role == "P") {
      e.role = Role::Participant;
    } else {
      throw ParseError("reward entry role must be \"F\" or \"P\"");
    }
    e.participants = 0;
    for (const int id : row.at("participants").get<std::vector<int>>()) {
      if (id < 0 || id >= kMaxMaskClients) throw ParseError("participant id out of range");
      e.participants |= ClientMask{1} << id;
    }
    e.value = row.at("value").get<double>();
    entries.push_back(e);
  }
  return RewardModel::subset_table(n_clients, entries);
}

}  // namespace

std::string game_to_json(const GameSpec& game) {
  json j;
  j["n_clients"] = game.n_clients;
  j["costs"] = game.costs;
  j["rewards"] = rewards_to_json(game.rewards);
  return j.dump(2) + "\n";
}

GameSpec game_from_json(const std::string& text) {
  GameSpec game;
  try {
    const json j = json::parse(text);
    game.n_clients = j.at("n_clients").get<int>();
    game.costs = j.at("costs").get<std::vector<double>>();
    game.rewards = rewards_from_json(j.at("rewards"), game.n_clients);
  } catch (const json::exception& e) {
    throw ParseError(std::string("game file: ") + e.what());
  }
  try {
    game.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("game file: ") + e.what());
  }
  return game;
}

void save_game(const GameSpec& game, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GameError("cannot open " + path + " for writing");
  out << game_to_json(game);
}

GameSpec load_game(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return game_from_json(oss.str());
}

std::string equilibrium_to_json(const EquilibriumResult& eq) {
  json j;
  switch (eq.kind) {
    case EquilibriumResult::Kind::Pure: j["kind"] = "pure"; break;
    case EquilibriumResult::Kind::Mixed: j["kind"] = "mixed"; break;
    case EquilibriumResult::Kind::MixedFamily: j["kind"] = "mixed_family"; break;
  }
  j["profile"] = profile_to_json(eq.profile);
  j["kkt_residual"] = eq.kkt_residual;
  json mult = json::array();
  for (const auto& m : eq.multipliers) mult.push_back({m[0], m[1]});
  j["multipliers"] = mult;
  if (eq.family) {
    j["family"] = {{"free_client", eq.family->free_client},
                   {"fixed", profile_to_json(eq.family->fixed)},
                   {"lo", eq.family->lo},
                   {"hi", eq.family->hi}};
  }
  return j.dump();
}

std::string solve_report_to_json(const std::vector<EquilibriumResult>& equilibria,
                                 const GlobalOptimum& opt, double gap) {
  json j;
  json eqs = json::array();
  for (const EquilibriumResult& eq : equilibria) eqs.push_back(json::parse(equilibrium_to_json(eq)));
  j["equilibria"] = eqs;
  j["global_optimum"] = {{"profile", profile_to_json(opt.profile)}, {"total", opt.total}};
  j["optimality_gap"] = gap;
  return j.dump(2) + "\n";
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream oss;
  oss << std::hex << h;
  return oss.str();
}

}  // namespace frgame
