#include "frgame/fedavg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "frgame/error.hpp"
#include "frgame/parallel.hpp"
#include "frgame/rng.hpp"
#include "frgame/serialization.hpp"

namespace frgame {

namespace {

struct Split {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Split gather(const SignalDataset& ds, const std::vector<int>& idx) {
  Split s;
  s.x.resize(static_cast<Eigen::Index>(idx.size()), ds.x.cols());
  s.y.resize(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    s.x.row(static_cast<Eigen::Index>(r)) = ds.x.row(idx[r]);
    s.y[r] = ds.labels[static_cast<std::size_t>(idx[r])];
  }
  return s;
}

std::string canonical_fl_config(int n_clients, AccuracyTable::Mode mode, const FlConfig& c) {
  nlohmann::json j;
  j["n_clients"] = n_clients;
  j["mode"] = mode == AccuracyTable::Mode::ByCount ? "by_count" : "by_subset";
  j["rounds"] = c.rounds;
  j["epochs_local"] = c.epochs_local;
  j["samples_per_client"] = c.samples_per_client;
  j["seeds"] = c.seeds;
  j["channel"] = {{"snr_db_min", c.channel.snr_db_min}, {"snr_db_max", c.channel.snr_db_max},
                  {"phase_jitter_bound", c.channel.phase_jitter_bound},
                  {"phase_update_period", c.channel.phase_update_period},
                  {"seed", c.channel.seed}};
  j["classifier"] = {{"input_dim", c.classifier.input_dim}, {"hidden_dim", c.classifier.hidden_dim},
                     {"output_dim", c.classifier.output_dim},
                     {"dropout_rate", c.classifier.dropout_rate}};
  j["adam"] = {{"learning_rate", c.adam.learning_rate}, {"beta1", c.adam.beta1},
               {"beta2", c.adam.beta2}, {"epsilon", c.adam.epsilon},
               {"batch_size", c.adam.batch_size}};
  return j.dump();
}

}  // namespace

ClassifierModel fedavg_round(const ClassifierModel& global, const std::vector<ClientId>& participants,
                             const std::vector<SignalDataset>& client_data, int epochs_local,
                             const AdamConfig& adam, std::uint64_t round_seed) {
  if (participants.empty()) return global;
  ClassifierModel sum;
  bool first = true;
  for (const ClientId c : participants) {
    if (c < 0 || c >= static_cast<int>(client_data.size()))
      throw std::invalid_argument("participant id out of range");
    const SignalDataset& ds = client_data[static_cast<std::size_t>(c)];
    const Split train = gather(ds, ds.train_idx);
    ClassifierModel local = train_local(global, train.x, train.y, epochs_local, adam,
                                        mix_seed(round_seed, static_cast<std::uint64_t>(c)));
    if (first) {
      sum = std::move(local);
      first = false;
    } else {
      if (local.w1.rows() != sum.w1.rows() || local.w1.cols() != sum.w1.cols())
        throw std::invalid_argument("participant model dimensions differ");
      sum.w1 += local.w1;
      sum.b1 += local.b1;
      sum.w2 += local.w2;
      sum.b2 += local.b2;
    }
  }
  const double inv = 1.0 / static_cast<double>(participants.size());
  sum.w1 *= inv;
  sum.b1 *= inv;
  sum.w2 *= inv;
  sum.b2 *= inv;
  return sum;
}

long long estimate_training_runs(int n_clients, AccuracyTable::Mode mode, const FlConfig& config) {
  long long participant_rounds = 0;
  if (mode == AccuracyTable::Mode::ByCount) {
    for (int k = 1; k <= n_clients; ++k) participant_rounds += k;
  } else {
    for (ClientMask m = 0; m < (ClientMask{1} << n_clients); ++m)
      participant_rounds += std::popcount(m);
  }
  return participant_rounds * static_cast<long long>(config.rounds) *
         static_cast<long long>(config.seeds.size());
}

AccuracyTable build_accuracy_table(int n_clients, AccuracyTable::Mode mode, const FlConfig& config) {
  if (n_clients < 1) throw std::invalid_argument("need at least one client");
  if (config.rounds < 0 || config.epochs_local < 1) throw std::invalid_argument("bad FL config");
  if (config.seeds.empty()) throw std::invalid_argument("need at least one seed");
  config.channel.validate();
  if (mode == AccuracyTable::Mode::BySubset && n_clients > 8) {
    throw InstanceTooLargeError("by-subset tables train 2^N configurations; cap is N <= 8");
  }
  const long long runs = estimate_training_runs(n_clients, mode, config);
  if (runs > config.max_training_runs) {
    std::ostringstream oss;
    oss << "accuracy table would need " << runs << " local-training runs (cap "
        << config.max_training_runs << ")";
    throw InstanceTooLargeError(oss.str());
  }

  // Entries: participant sets, one per count (first k clients) or per subset.
  std::vector<std::vector<ClientId>> entry_participants;
  if (mode == AccuracyTable::Mode::ByCount) {
    for (int k = 0; k <= n_clients; ++k) {
      std::vector<ClientId> p;
      for (int c = 0; c < k; ++c) p.push_back(c);
      entry_participants.push_back(std::move(p));
    }
  } else {
    for (ClientMask m = 0; m < (ClientMask{1} << n_clients); ++m) {
      std::vector<ClientId> p;
      for (int c = 0; c < n_clients; ++c) {
        if (m & (ClientMask{1} << c)) p.push_back(c);
      }
      entry_participants.push_back(std::move(p));
    }
  }

  const int n_entries = static_cast<int>(entry_participants.size());
  const int n_seeds = static_cast<int>(config.seeds.size());
  std::vector<std::vector<double>> acc(static_cast<std::size_t>(n_entries),
                                       std::vector<double>(static_cast<std::size_t>(n_seeds), 0.0));

  // Per-seed data and init are shared across entries (common random numbers);
  // tasks are (entry, seed) pairs and each writes only its own slot.
  struct SeedContext {
    std::vector<SignalDataset> data;
    ClassifierModel init;
    Eigen::MatrixXd test_x;
    std::vector<int> test_y;
  };
  std::vector<SeedContext> contexts(static_cast<std::size_t>(n_seeds));
  parallel_for(n_seeds, [&](int si) {
    SeedContext& ctx = contexts[static_cast<std::size_t>(si)];
    const std::uint64_t seed = config.seeds[static_cast<std::size_t>(si)];
    ChannelConfig chan = config.channel;
    chan.seed = mix_seed(config.channel.seed, seed, 0xDA7AULL);
    ctx.data = generate_dataset(chan, n_clients, config.samples_per_client);
    ctx.init = init_classifier(config.classifier, mix_seed(seed, 0x171ULL));
    // pooled held-out test split of all clients
    Eigen::Index rows = 0;
    for (const SignalDataset& ds : ctx.data) rows += static_cast<Eigen::Index>(ds.test_idx.size());
    ctx.test_x.resize(rows, kSignalFeatureDim);
    ctx.test_y.reserve(static_cast<std::size_t>(rows));
    Eigen::Index at = 0;
    for (const SignalDataset& ds : ctx.data) {
      for (const int idx : ds.test_idx) {
        ctx.test_x.row(at++) = ds.x.row(idx);
        ctx.test_y.push_back(ds.labels[static_cast<std::size_t>(idx)]);
      }
    }
  });

  parallel_for(n_entries * n_seeds, [&](int task) {
    const int entry = task / n_seeds;
    const int si = task % n_seeds;
    const SeedContext& ctx = contexts[static_cast<std::size_t>(si)];
    const std::uint64_t seed = config.seeds[static_cast<std::size_t>(si)];
    const std::vector<ClientId>& participants = entry_participants[static_cast<std::size_t>(entry)];
    ClassifierModel global = ctx.init;
    if (!participants.empty()) {
      for (int round = 1; round <= config.rounds; ++round) {
        global = fedavg_round(global, participants, ctx.data, config.epochs_local, config.adam,
                              mix_seed(seed, static_cast<std::uint64_t>(round), 0xF1ULL));
      }
    }
    acc[static_cast<std::size_t>(entry)][static_cast<std::size_t>(si)] =
        evaluate_accuracy(global, ctx.test_x, ctx.test_y);
  });

  AccuracyTable table;
  table.mode = mode;
  table.n_clients = n_clients;
  table.seeds = config.seeds;
  table.epochs = config.rounds;
  table.config_hash = config_hash(canonical_fl_config(n_clients, mode, config));
  for (int entry = 0; entry < n_entries; ++entry) {
    const auto& samples = acc[static_cast<std::size_t>(entry)];
    double mean = 0.0;
    for (const double a : samples) mean += a;
    mean /= static_cast<double>(n_seeds);
    double var = 0.0;
    for (const double a : samples) var += (a - mean) * (a - mean);
    const double sd = n_seeds > 1 ? std::sqrt(var / static_cast<double>(n_seeds - 1)) : 0.0;
    if (mode == AccuracyTable::Mode::ByCount) {
      table.mean.push_back(mean);
      table.stddev.push_back(sd);
    } else {
      table.subset_mean[static_cast<ClientMask>(entry)] = mean;
      table.subset_stddev[static_cast<ClientMask>(entry)] = sd;
    }
  }
  return table;
}

}  // namespace frgame
