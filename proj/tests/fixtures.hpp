#ifndef FRGAME_TESTS_FIXTURES_HPP
#define FRGAME_TESTS_FIXTURES_HPP

#include "frgame/game.hpp"

namespace frgame::test {

// Two-client game with the accuracy curve A = [0.5, 0.8, 0.9] and a common
// cost c: no-participant accuracy 0.5, one participant 0.8, both 0.9.
inline GameSpec example_two_client_game(double cost) {
  GameSpec game;
  game.n_clients = 2;
  game.costs = {cost, cost};
  game.rewards = RewardModel::symmetric_curve({0.5, 0.8, 0.9});
  return game;
}

// Three-client monotone fixture A = [0.5, 0.7, 0.85, 0.9].
inline GameSpec three_client_game(double cost) {
  GameSpec game;
  game.n_clients = 3;
  game.costs = {cost, cost, cost};
  game.rewards = RewardModel::symmetric_curve({0.5, 0.7, 0.85, 0.9});
  return game;
}

}  // namespace frgame::test

#endif  // FRGAME_TESTS_FIXTURES_HPP
