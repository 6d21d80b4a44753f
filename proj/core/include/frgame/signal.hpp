#ifndef FRGAME_SIGNAL_HPP
#define FRGAME_SIGNAL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace frgame {

constexpr int kSymbolsPerSample = 16;
constexpr int kSignalFeatureDim = 2 * kSymbolsPerSample;  // I and Q rows

// Synthetic channel for the I/Q dataset: per-sample SNR drawn uniformly from
// [snr_db_min, snr_db_max] (infinite bounds switch the noise off), a phase
// rotation drawn uniformly from [-phase_jitter_bound, +phase_jitter_bound]
// and re-drawn every phase_update_period generated samples.
struct ChannelConfig {
  double snr_db_min = 0.0;
  double snr_db_max = 10.0;
  double phase_jitter_bound = M_PI / 30.0;
  int phase_update_period = 20;
  std::uint64_t seed = 0;

  void validate() const;
};

// Labels: 0 = BPSK, 1 = QPSK.
enum class Modulation : int { BPSK = 0, QPSK = 1 };

// One client's samples: row s of `x` is the flattened 2x16 I/Q matrix
// (16 I values then 16 Q values), unit symbol energy before noise.
struct SignalDataset {
  Eigen::MatrixXd x;       // samples x 32
  std::vector<int> labels; // 0/1
  std::vector<int> train_idx;
  std::vector<int> test_idx;

  int size() const { return static_cast<int>(labels.size()); }
};

// Generates one dataset per client, deterministic given config.seed.
// Labels are an exactly balanced shuffled vector (each sample's marginal
// label is still uniform); the train/test split is 80/20 by position.
std::vector<SignalDataset> generate_dataset(const ChannelConfig& config, int n_clients,
                                            int samples_per_client);

}  // namespace frgame

#endif  // FRGAME_SIGNAL_HPP
