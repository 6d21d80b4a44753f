#include "frgame/signal.hpp"

#include <cmath>
#include <stdexcept>

#include "frgame/rng.hpp"

namespace frgame {

void ChannelConfig::validate() const {
  if (snr_db_min > snr_db_max) throw std::invalid_argument("snr range is inverted");
  if (!(phase_jitter_bound >= 0.0)) throw std::invalid_argument("phase jitter bound must be >= 0");
  if (phase_update_period < 1) throw std::invalid_argument("phase update period must be >= 1");
}

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

}  // namespace

std::vector<SignalDataset> generate_dataset(const ChannelConfig& config, int n_clients,
                                            int samples_per_client) {
  config.validate();
  if (n_clients < 1) throw std::invalid_argument("need at least one client");
  if (samples_per_client < 1) throw std::invalid_argument("need at least one sample per client");

  const bool noise_on = std::isfinite(config.snr_db_min) && std::isfinite(config.snr_db_max);
  std::vector<SignalDataset> out(static_cast<std::size_t>(n_clients));

  for (int c = 0; c < n_clients; ++c) {
    SignalDataset& ds = out[static_cast<std::size_t>(c)];
    ds.x.resize(samples_per_client, kSignalFeatureDim);
    ds.labels.resize(static_cast<std::size_t>(samples_per_client));

    // Exactly balanced labels, shuffled, so every client's class balance is
    // structural rather than a tail event of 1000 coin flips.
    RandomStream label_rng(mix_seed(config.seed, static_cast<std::uint64_t>(c), 0xA11CEULL));
    for (int s = 0; s < samples_per_client; ++s) {
      ds.labels[static_cast<std::size_t>(s)] = s % 2;
    }
    label_rng.shuffle(ds.labels);

    RandomStream rng(mix_seed(config.seed, static_cast<std::uint64_t>(c), 0xC4A21ULL));
    double phase = 0.0;
    for (int s = 0; s < samples_per_client; ++s) {
      if (s % config.phase_update_period == 0) {
        phase = rng.uniform(-config.phase_jitter_bound, config.phase_jitter_bound);
      }
      const double cos_p = std::cos(phase);
      const double sin_p = std::sin(phase);
      const bool qpsk = ds.labels[static_cast<std::size_t>(s)] == static_cast<int>(Modulation::QPSK);

      double noise_std = 0.0;
      if (noise_on) {
        const double snr_db = rng.uniform(config.snr_db_min, config.snr_db_max);
        const double snr_linear = std::pow(10.0, snr_db / 10.0);
        // unit symbol energy; complex noise split evenly over I and Q
        noise_std = std::sqrt(1.0 / (2.0 * snr_linear));
      }

      for (int t = 0; t < kSymbolsPerSample; ++t) {
        double si, sq;
        if (qpsk) {
          si = rng.bernoulli(0.5) ? kInvSqrt2 : -kInvSqrt2;
          sq = rng.bernoulli(0.5) ? kInvSqrt2 : -kInvSqrt2;
        } else {
          si = rng.bernoulli(0.5) ? 1.0 : -1.0;
          sq = 0.0;
        }
        double xi = si * cos_p - sq * sin_p;
        double xq = si * sin_p + sq * cos_p;
        if (noise_on) {
          xi += noise_std * rng.normal();
          xq += noise_std * rng.normal();
        }
        ds.x(s, t) = xi;
        ds.x(s, kSymbolsPerSample + t) = xq;
      }
    }

    const int n_train = (samples_per_client * 8) / 10;
    ds.train_idx.clear();
    ds.test_idx.clear();
    for (int s = 0; s < samples_per_client; ++s) {
      (s < n_train ? ds.train_idx : ds.test_idx).push_back(s);
    }
  }
  return out;
}

}  // namespace frgame
