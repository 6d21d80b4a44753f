#ifndef FRGAME_REWARD_MODEL_HPP
#define FRGAME_REWARD_MODEL_HPP

#include <unordered_map>
#include <vector>

#include "frgame/types.hpp"

namespace frgame {

// One explicit reward entry: client `client` takes role `role`, the set of
// *other* clients that participate is `participants` (a mask over all client
// ids; the bit for `client` itself must be clear).
struct RewardEntry {
  ClientId client;
  Role role;
  ClientMask participants;
  double value;
};

// Rewards u^{(i)}_{S_i | F,P} in one of two forms:
//   SymmetricCurve: a single accuracy curve A(k) over participant counts,
//     u_{F|F,P} = A(|P|) and u_{P|F,P} = A(|P|+1). This is the shared-global-model
//     case: the reward depends only on who participates.
//   SubsetTable: a total per-client table over (role, opponent subset),
//     allowing asymmetric rewards.
class RewardModel {
 public:
  enum class Kind { SymmetricCurve, SubsetTable };

  RewardModel() = default;

  // curve[k] = accuracy with k participants; needs k = 0..n_clients, so the
  // curve length fixes the client count it supports (length - 1).
  static RewardModel symmetric_curve(std::vector<double> curve);

  // Validates totality: an entry for every (client, role, opponent subset).
  static RewardModel subset_table(int n_clients, const std::vector<RewardEntry>& entries);

  Kind kind() const { return kind_; }
  bool is_symmetric() const { return kind_ == Kind::SymmetricCurve; }

  // Largest client count this model can serve.
  int max_clients() const;

  const std::vector<double>& curve() const { return curve_; }

  // Reward for `client` playing `role` when the participating opponents are
  // exactly `participants` (mask over all clients, own bit clear).
  double reward(ClientId client, Role role, ClientMask participants) const;

  // Flat list of entries (for serialization); empty for SymmetricCurve.
  std::vector<RewardEntry> entries() const;

  int table_clients() const { return table_clients_; }

 private:
  Kind kind_ = Kind::SymmetricCurve;
  std::vector<double> curve_;
  // SubsetTable storage: per client, per role, participant-mask -> value.
  std::vector<std::array<std::unordered_map<ClientMask, double>, 2>> table_;
  int table_clients_ = 0;
};

}  // namespace frgame

#endif  // FRGAME_REWARD_MODEL_HPP
