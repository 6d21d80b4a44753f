#ifndef FRGAME_FEDAVG_HPP
#define FRGAME_FEDAVG_HPP

#include <cstdint>
#include <vector>

#include "frgame/accuracy_table.hpp"
#include "frgame/classifier.hpp"
#include "frgame/signal.hpp"
#include "frgame/types.hpp"

namespace frgame {

// Full configuration of one FL reward-oracle build.
struct FlConfig {
  int rounds = 100;           // FedAvg rounds ("epochs" of the FL loop)
  int epochs_local = 1;       // local passes per round
  int samples_per_client = 1000;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  ChannelConfig channel;
  ClassifierConfig classifier;
  AdamConfig adam;
  // Upper bound on (table entry, seed) local-training runs before
  // build_accuracy_table refuses with an estimate.
  long long max_training_runs = 2000000;
};

// One FedAvg round: every participant initializes from `global`, trains on
// its own training split, and the new global is the unweighted mean of the
// participants' weights. An empty participant set leaves `global` unchanged.
ClassifierModel fedavg_round(const ClassifierModel& global, const std::vector<ClientId>& participants,
                             const std::vector<SignalDataset>& client_data, int epochs_local,
                             const AdamConfig& adam, std::uint64_t round_seed);

// Runs the FedAvg loop for every participant count k = 0..N (ByCount) or
// every subset (BySubset, N <= 8), evaluating the final global model on the
// pooled held-out test split of all N clients, averaged over config.seeds.
// Entry k = 0 is the untrained initialized model's accuracy.
AccuracyTable build_accuracy_table(int n_clients, AccuracyTable::Mode mode, const FlConfig& config);

// Number of local-training runs build_accuracy_table would execute.
long long estimate_training_runs(int n_clients, AccuracyTable::Mode mode, const FlConfig& config);

}  // namespace frgame

#endif  // FRGAME_FEDAVG_HPP
