#include "frgame/game.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "frgame/error.hpp"

namespace frgame {

void GameSpec::validate() const {
  if (n_clients < 1) throw std::invalid_argument("game needs at least one client");
  if (static_cast<int>(costs.size()) != n_clients)
    throw std::invalid_argument("costs length must equal n_clients");
  for (double c : costs) {
    if (!(c >= 0.0)) throw std::invalid_argument("costs must be nonnegative");
  }
  if (rewards.max_clients() < n_clients) {
    std::ostringstream oss;
    oss << "reward model covers " << rewards.max_clients() << " clients, game has " << n_clients;
    throw std::invalid_argument(oss.str());
  }
  if (rewards.kind() == RewardModel::Kind::SubsetTable && rewards.table_clients() != n_clients)
    throw std::invalid_argument("subset table client count must equal n_clients");
}

bool GameSpec::is_symmetric() const {
  if (!rewards.is_symmetric()) return false;
  for (double c : costs) {
    if (c != costs[0]) return false;
  }
  return true;
}

std::vector<double> participant_count_weights(std::span<const double> opponent_free_probs) {
  std::vector<double> w{1.0};
  w.reserve(opponent_free_probs.size() + 1);
  for (const double p : opponent_free_probs) {
    const double q = 1.0 - p;  // participation probability
    std::vector<double> next(w.size() + 1, 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) {
      next[k] += w[k] * p;
      next[k + 1] += w[k] * q;
    }
    w = std::move(next);
  }
  return w;
}

std::vector<double> opponents_of(const GameSpec& game, ClientId client,
                                 const StrategyProfile& profile) {
  if (profile.size() != game.n_clients)
    throw std::invalid_argument("profile length must equal n_clients");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(game.n_clients) - 1);
  for (int j = 0; j < game.n_clients; ++j) {
    if (j != client) out.push_back(profile[j]);
  }
  return out;
}

namespace {

void check_eval_args(const GameSpec& game, ClientId client,
                     std::span<const double> opponent_free_probs) {
  game.validate();
  if (client < 0 || client >= game.n_clients) throw std::invalid_argument("client id out of range");
  if (static_cast<int>(opponent_free_probs.size()) != game.n_clients - 1)
    throw std::invalid_argument("opponent profile must have n_clients - 1 entries");
  for (const double p : opponent_free_probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("opponent probability not in [0,1]");
  }
}

// Partition-weighted expected reward for `client` playing `role`.
double expected_reward(const GameSpec& game, ClientId client, Role role,
                       std::span<const double> opponent_free_probs) {
  if (game.rewards.is_symmetric()) {
    // Reward depends only on the participating-opponent count: Poisson-binomial
    // weights give the exact sum in O(N^2).
    const std::vector<double> w = participant_count_weights(opponent_free_probs);
    double total = 0.0;
    const int offset = role == Role::Participant ? 1 : 0;
    const auto& curve = game.rewards.curve();
    for (std::size_t k = 0; k < w.size(); ++k) {
      total += w[k] * curve.at(k + static_cast<std::size_t>(offset));
    }
    return total;
  }
  double total = 0.0;
  for_each_partition(game, client, opponent_free_probs,
                     [&](const Partition& part, double weight) {
                       if (weight == 0.0) return;
                       total += weight * game.rewards.reward(client, role, part.participants);
                     });
  return total;
}

}  // namespace

void for_each_partition(const GameSpec& game, ClientId client,
                        std::span<const double> opponent_free_probs,
                        const std::function<void(const Partition&, double)>& fn) {
  const int n_opp = static_cast<int>(opponent_free_probs.size());
  if (game.n_clients > kSubsetEnumerationCap) {
    std::ostringstream oss;
    oss << "partition enumeration visits 2^" << (game.n_clients - 1)
        << " subsets; cap is N <= " << kSubsetEnumerationCap
        << "; use the symmetric-curve form for larger games";
    throw InstanceTooLargeError(oss.str());
  }
  // Map opponent bit position -> client id for full-game masks.
  std::vector<int> opp_ids;
  opp_ids.reserve(static_cast<std::size_t>(n_opp));
  for (int j = 0; j < game.n_clients; ++j) {
    if (j != client) opp_ids.push_back(j);
  }
  const std::uint32_t limit = std::uint32_t{1} << n_opp;
  for (std::uint32_t bits = 0; bits < limit; ++bits) {
    // bits: set bit b <=> opponent b participates.
    double weight = 1.0;
    Partition part{0, 0};
    for (int b = 0; b < n_opp; ++b) {
      const double p = opponent_free_probs[static_cast<std::size_t>(b)];
      const ClientMask id_bit = ClientMask{1} << opp_ids[static_cast<std::size_t>(b)];
      if (bits & (std::uint32_t{1} << b)) {
        weight *= 1.0 - p;
        part.participants |= id_bit;
      } else {
        weight *= p;
        part.free_riders |= id_bit;
      }
    }
    fn(part, weight);
  }
}

double utility_free(const GameSpec& game, ClientId client,
                    std::span<const double> opponent_free_probs) {
  check_eval_args(game, client, opponent_free_probs);
  return expected_reward(game, client, Role::FreeRider, opponent_free_probs);
}

double utility_participate(const GameSpec& game, ClientId client,
                           std::span<const double> opponent_free_probs) {
  check_eval_args(game, client, opponent_free_probs);
  return expected_reward(game, client, Role::Participant, opponent_free_probs) -
         game.costs[static_cast<std::size_t>(client)];
}

double client_expected_utility(const GameSpec& game, ClientId client,
                               const StrategyProfile& profile) {
  profile.validate();
  const std::vector<double> opp = opponents_of(game, client, profile);
  const double p = profile[client];
  return p * utility_free(game, client, opp) + (1.0 - p) * utility_participate(game, client, opp);
}

double total_utility(const GameSpec& game, const StrategyProfile& profile) {
  double total = 0.0;
  for (int i = 0; i < game.n_clients; ++i) {
    total += client_expected_utility(game, i, profile);
  }
  return total;
}

RewardModel reward_table_from_accuracy(const AccuracyTable& accuracy, int n_clients) {
  accuracy.validate();
  if (accuracy.mode == AccuracyTable::Mode::ByCount) {
    if (static_cast<int>(accuracy.mean.size()) < n_clients + 1) {
      std::ostringstream oss;
      oss << "accuracy table covers counts 0.." << accuracy.mean.size() - 1 << ", need 0.."
          << n_clients;
      throw ModelIncompleteError(oss.str());
    }
    return RewardModel::symmetric_curve(
        std::vector<double>(accuracy.mean.begin(), accuracy.mean.begin() + n_clients + 1));
  }
  if (accuracy.n_clients != n_clients)
    throw ModelIncompleteError("by-subset accuracy table built for a different client count");
  std::vector<RewardEntry> entries;
  const ClientMask full = (ClientMask{1} << n_clients) - 1;
  for (int i = 0; i < n_clients; ++i) {
    const ClientMask own = ClientMask{1} << i;
    const ClientMask others = full & ~own;
    // enumerate subsets of the opponents
    ClientMask sub = others;
    while (true) {
      entries.push_back(RewardEntry{i, Role::FreeRider, sub, accuracy.accuracy_for_mask(sub)});
      entries.push_back(
          RewardEntry{i, Role::Participant, sub, accuracy.accuracy_for_mask(sub | own)});
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  }
  return RewardModel::subset_table(n_clients, entries);
}

}  // namespace frgame
