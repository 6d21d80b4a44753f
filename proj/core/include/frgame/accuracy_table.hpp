#ifndef FRGAME_ACCURACY_TABLE_HPP
#define FRGAME_ACCURACY_TABLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frgame/types.hpp"

namespace frgame {

// Global-model accuracy keyed by participant count (ByCount) or by the exact
// participant set (BySubset), with provenance metadata. This is the bridge
// between the FL simulation (or a parametric curve) and the game's rewards.
struct AccuracyTable {
  enum class Mode { ByCount, BySubset };

  Mode mode = Mode::ByCount;
  int n_clients = 0;

  // ByCount: index k = number of participants, k = 0..n_clients.
  std::vector<double> mean;
  std::vector<double> stddev;

  // BySubset: key = participant mask over all clients.
  std::map<ClientMask, double> subset_mean;
  std::map<ClientMask, double> subset_stddev;

  // Provenance.
  std::vector<std::uint64_t> seeds;
  int epochs = 0;  // FedAvg rounds used to build the table; 0 for parametric.
  std::string config_hash;

  // Accuracy for a participant set; throws ModelIncompleteError on a gap.
  double accuracy_for_mask(ClientMask participants) const;
  double accuracy_for_count(int k) const;

  void validate() const;
};

// Wraps explicit (k, accuracy) values as a ByCount table (no FL simulation).
// `by_count` must start at k = 0 and be contiguous; values in [0,1].
AccuracyTable parametric_curve(const std::vector<double>& by_count);

std::string accuracy_table_to_json(const AccuracyTable& table);
AccuracyTable accuracy_table_from_json(const std::string& text);
void save_accuracy_table(const AccuracyTable& table, const std::string& path);
AccuracyTable load_accuracy_table(const std::string& path);

}  // namespace frgame

#endif  // FRGAME_ACCURACY_TABLE_HPP
