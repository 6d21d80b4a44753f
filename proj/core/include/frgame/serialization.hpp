#ifndef FRGAME_SERIALIZATION_HPP
#define FRGAME_SERIALIZATION_HPP

#include <string>

#include "frgame/equilibrium.hpp"
#include "frgame/game.hpp"

namespace frgame {

// GameSpec <-> JSON. Round-trip (parse -> serialize -> parse) is lossless.
// Schema: { "n_clients": N, "costs": [...],
//           "rewards": { "kind": "symmetric", "curve": [A(0)..A(N)] }
//                    | { "kind": "subset",
//                        "table": [ {"client": i, "role": "F"|"P",
//                                    "participants": [ids...], "value": v} ] } }
std::string game_to_json(const GameSpec& game);
GameSpec game_from_json(const std::string& text);  // throws ParseError
void save_game(const GameSpec& game, const std::string& path);
GameSpec load_game(const std::string& path);

std::string equilibrium_to_json(const EquilibriumResult& eq);
std::string solve_report_to_json(const std::vector<EquilibriumResult>& equilibria,
                                 const GlobalOptimum& opt, double gap);

// FNV-1a 64-bit of a canonical string; used as the config hash stamped into
// every emitted table.
std::string config_hash(const std::string& canonical);

}  // namespace frgame

#endif  // FRGAME_SERIALIZATION_HPP
