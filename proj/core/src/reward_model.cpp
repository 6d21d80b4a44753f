#include "frgame/reward_model.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "frgame/error.hpp"

namespace frgame {

namespace {

void check_reward_value(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream oss;
    oss << what << " value " << v << " is not in [0,1]";
    throw std::invalid_argument(oss.str());
  }
}

}  // namespace

RewardModel RewardModel::symmetric_curve(std::vector<double> curve) {
  if (curve.empty()) throw std::invalid_argument("accuracy curve must define A(0)");
  for (double v : curve) check_reward_value(v, "accuracy curve");
  RewardModel m;
  m.kind_ = Kind::SymmetricCurve;
  m.curve_ = std::move(curve);
  return m;
}

RewardModel RewardModel::subset_table(int n_clients, const std::vector<RewardEntry>& entries) {
  if (n_clients < 1) throw std::invalid_argument("subset table needs at least one client");
  if (n_clients > kSubsetEnumerationCap) {
    std::ostringstream oss;
    oss << "subset table for " << n_clients << " clients would enumerate 2^" << (n_clients - 1)
        << " partitions per evaluation (cap N <= " << kSubsetEnumerationCap
        << "); use the symmetric-curve form";
    throw InstanceTooLargeError(oss.str());
  }
  RewardModel m;
  m.kind_ = Kind::SubsetTable;
  m.table_clients_ = n_clients;
  m.table_.resize(static_cast<std::size_t>(n_clients));
  const ClientMask full = (ClientMask{1} << n_clients) - 1;
  for (const RewardEntry& e : entries) {
    if (e.client < 0 || e.client >= n_clients)
      throw std::invalid_argument("reward entry client id out of range");
    const ClientMask own = ClientMask{1} << e.client;
    if (e.participants & own)
      throw std::invalid_argument("reward entry participant set contains the client itself");
    if (e.participants & ~full)
      throw std::invalid_argument("reward entry participant set contains unknown clients");
    check_reward_value(e.value, "reward entry");
    m.table_[static_cast<std::size_t>(e.client)][static_cast<std::size_t>(e.role)][e.participants] =
        e.value;
  }
  // Totality: every (client, role, opponent subset) must be present.
  const std::size_t expected = std::size_t{1} << (n_clients - 1);
  for (int i = 0; i < n_clients; ++i) {
    for (int r = 0; r < 2; ++r) {
      const auto& map = m.table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
      if (map.size() != expected) {
        std::ostringstream oss;
        oss << "subset table incomplete for client " << i << " role "
            << role_char(static_cast<Role>(r)) << ": " << map.size() << " of " << expected
            << " subsets";
        throw ModelIncompleteError(oss.str());
      }
    }
  }
  return m;
}

int RewardModel::max_clients() const {
  if (kind_ == Kind::SymmetricCurve) return static_cast<int>(curve_.size()) - 1;
  return table_clients_;
}

double RewardModel::reward(ClientId client, Role role, ClientMask participants) const {
  if (kind_ == Kind::SymmetricCurve) {
    const int k = std::popcount(participants) + (role == Role::Participant ? 1 : 0);
    if (k >= static_cast<int>(curve_.size())) {
      std::ostringstream oss;
      oss << "accuracy curve has no entry for participant count " << k;
      throw ModelIncompleteError(oss.str());
    }
    return curve_[static_cast<std::size_t>(k)];
  }
  if (client < 0 || client >= table_clients_)
    throw ModelIncompleteError("subset table has no such client");
  const auto& map = table_[static_cast<std::size_t>(client)][static_cast<std::size_t>(role)];
  const auto it = map.find(participants);
  if (it == map.end()) {
    std::ostringstream oss;
    oss << "subset table missing entry: client " << client << " role " << role_char(role)
        << " participants mask " << participants;
    throw ModelIncompleteError(oss.str());
  }
  return it->second;
}

std::vector<RewardEntry> RewardModel::entries() const {
  std::vector<RewardEntry> out;
  if (kind_ != Kind::SubsetTable) return out;
  for (int i = 0; i < table_clients_; ++i) {
    for (int r = 0; r < 2; ++r) {
      for (const auto& [mask, value] : table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]) {
        out.push_back(RewardEntry{i, static_cast<Role>(r), mask, value});
      }
    }
  }
  return out;
}

}  // namespace frgame
