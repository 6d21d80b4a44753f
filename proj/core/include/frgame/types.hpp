#ifndef FRGAME_TYPES_HPP
#define FRGAME_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace frgame {

// Role of a client in one FL round: send local updates (Participant) or
// only receive the broadcast global model (FreeRider).
enum class Role : std::uint8_t { FreeRider, Participant };

inline char role_char(Role r) { return r == Role::FreeRider ? 'F' : 'P'; }

using ClientId = int;

// Subset of clients encoded as a bitmask: bit j set <=> client j is in the set.
using ClientMask = std::uint32_t;

constexpr int kMaxMaskClients = 31;

// Subset-table games enumerate 2^(N-1) opponent partitions per evaluation;
// the table form is hard-capped here and the symmetric-curve form (O(N^2)
// per evaluation) is required above it.
constexpr int kSubsetEnumerationCap = 16;

// Vector of per-client free-riding probabilities p_i in [0,1].
struct StrategyProfile {
  std::vector<double> probs;

  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<double> p) : probs(std::move(p)) {}
  StrategyProfile(std::initializer_list<double> p) : probs(p) {}

  int size() const { return static_cast<int>(probs.size()); }
  double operator[](int i) const { return probs[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return probs[static_cast<std::size_t>(i)]; }

  // Throws std::invalid_argument unless every entry is a probability.
  void validate() const;
};

}  // namespace frgame

#endif  // FRGAME_TYPES_HPP
