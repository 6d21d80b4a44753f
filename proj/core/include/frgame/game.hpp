#ifndef FRGAME_GAME_HPP
#define FRGAME_GAME_HPP

#include <functional>
#include <span>
#include <vector>

#include "frgame/accuracy_table.hpp"
#include "frgame/reward_model.hpp"
#include "frgame/types.hpp"

namespace frgame {

// A complete game instance: N clients with participation costs c_i >= 0 and
// a reward model over role profiles.
struct GameSpec {
  int n_clients = 0;
  std::vector<double> costs;
  RewardModel rewards;

  // Throws std::invalid_argument on an inconsistent instance.
  void validate() const;

  // Symmetric-curve rewards and all costs equal: the scalar solvers apply.
  bool is_symmetric() const;
};

// A split of a client's opponent set into free-riders and participants.
// The two masks are disjoint and together cover exactly the opponents.
struct Partition {
  ClientMask free_riders;
  ClientMask participants;
};

// Enumerates all 2^(N-1) partitions of `client`'s opponents, invoking
// fn(partition, weight) where weight is the joint probability of that split
// under the opponents' free-riding probabilities. Weights sum to 1.
void for_each_partition(const GameSpec& game, ClientId client,
                        std::span<const double> opponent_free_probs,
                        const std::function<void(const Partition&, double)>& fn);

// Probability weights over the number of participating opponents, given the
// opponents' free-riding probabilities (Poisson-binomial, exact O(n^2) DP).
// weights()[k] = Pr[exactly k opponents participate]; sums to 1.
std::vector<double> participant_count_weights(std::span<const double> opponent_free_probs);

// Opponents of `client` in ascending id order (the convention for the
// restricted profiles taken by utility_free / utility_participate).
std::vector<double> opponents_of(const GameSpec& game, ClientId client,
                                 const StrategyProfile& profile);

// Expected reward of `client` when free-riding: the partition-weighted sum
// over all splits of the opponent set into free-riders and participants.
double utility_free(const GameSpec& game, ClientId client,
                    std::span<const double> opponent_free_probs);

// Same weighted sum with the participant rewards, minus the cost c_i.
double utility_participate(const GameSpec& game, ClientId client,
                           std::span<const double> opponent_free_probs);

// p_i * utility_free + (1 - p_i) * utility_participate.
double client_expected_utility(const GameSpec& game, ClientId client,
                               const StrategyProfile& profile);

// Sum of every client's expected utility.
double total_utility(const GameSpec& game, const StrategyProfile& profile);

// Builds rewards from a table of global-model accuracies: a free-rider earns
// the accuracy of the participant set, a participant the accuracy of that set
// plus itself.
RewardModel reward_table_from_accuracy(const AccuracyTable& accuracy, int n_clients);

}  // namespace frgame

#endif  // FRGAME_GAME_HPP
