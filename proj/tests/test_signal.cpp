#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "frgame/signal.hpp"

using namespace frgame;

namespace {

ChannelConfig clean_channel(double jitter = 0.0) {
  ChannelConfig cfg;
  cfg.snr_db_min = std::numeric_limits<double>::infinity();
  cfg.snr_db_max = std::numeric_limits<double>::infinity();
  cfg.phase_jitter_bound = jitter;
  cfg.seed = 1;
  return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic given the seed") {
  ChannelConfig cfg;
  cfg.seed = 99;
  const auto a = generate_dataset(cfg, 2, 200);
  const auto b = generate_dataset(cfg, 2, 200);
  for (int c = 0; c < 2; ++c) {
    CHECK(a[c].x == b[c].x);
    CHECK(a[c].labels == b[c].labels);
  }
  cfg.seed = 100;
  const auto other = generate_dataset(cfg, 2, 200);
  CHECK(a[0].x != other[0].x);
}

TEST_CASE("noise off and zero jitter: BPSK quadrature row is exactly zero") {
  const auto data = generate_dataset(clean_channel(), 1, 400);
  const SignalDataset& ds = data[0];
  int bpsk_seen = 0;
  for (int s = 0; s < ds.size(); ++s) {
    if (ds.labels[static_cast<std::size_t>(s)] != static_cast<int>(Modulation::BPSK)) continue;
    ++bpsk_seen;
    for (int t = 0; t < kSymbolsPerSample; ++t) {
      CHECK(std::abs(ds.x(s, kSymbolsPerSample + t)) <= 1e-9);
      CHECK(std::abs(std::abs(ds.x(s, t)) - 1.0) <= 1e-9);
    }
  }
  CHECK(bpsk_seen == 200);
  // QPSK symbols sit on the unit-energy diagonal constellation
  for (int s = 0; s < ds.size(); ++s) {
    if (ds.labels[static_cast<std::size_t>(s)] != static_cast<int>(Modulation::QPSK)) continue;
    for (int t = 0; t < kSymbolsPerSample; ++t) {
      CHECK(std::abs(std::abs(ds.x(s, t)) - 1.0 / std::sqrt(2.0)) <= 1e-9);
      CHECK(std::abs(std::abs(ds.x(s, kSymbolsPerSample + t)) - 1.0 / std::sqrt(2.0)) <= 1e-9);
    }
  }
}

TEST_CASE("1000 samples with period 20 use exactly 50 distinct phases") {
  ChannelConfig cfg = clean_channel(M_PI / 30.0);
  const auto data = generate_dataset(cfg, 2, 1000);
  for (const SignalDataset& ds : data) {
    std::set<long long> phases;
    for (int s = 0; s < ds.size(); ++s) {
      const bool qpsk = ds.labels[static_cast<std::size_t>(s)] == 1;
      const double ang = std::atan2(ds.x(s, kSymbolsPerSample), ds.x(s, 0));
      // constellation angles: BPSK multiples of pi, QPSK odd multiples of pi/4
      const double theta =
          qpsk ? std::remainder(ang - M_PI / 4.0, M_PI / 2.0) : std::remainder(ang, M_PI);
      phases.insert(std::llround(theta * 1e9));
    }
    CHECK(phases.size() == 50);
  }
}

TEST_CASE("labels are exactly balanced per client") {
  ChannelConfig cfg;
  cfg.seed = 5;
  for (const int n : {100, 999, 1000}) {
    const auto data = generate_dataset(cfg, 3, n);
    for (const SignalDataset& ds : data) {
      int ones = 0;
      for (const int y : ds.labels) ones += y;
      CHECK(std::abs(2 * ones - n) <= 1);
      const double frac = static_cast<double>(ones) / n;
      CHECK(frac >= 0.45);
      CHECK(frac <= 0.55);
    }
  }
}

TEST_CASE("train/test split is 80/20, disjoint and complete") {
  ChannelConfig cfg;
  const auto data = generate_dataset(cfg, 2, 1000);
  for (const SignalDataset& ds : data) {
    CHECK(ds.train_idx.size() == 800);
    CHECK(ds.test_idx.size() == 200);
    std::set<int> all(ds.train_idx.begin(), ds.train_idx.end());
    for (const int i : ds.test_idx) {
      CHECK(all.find(i) == all.end());
      all.insert(i);
    }
    CHECK(all.size() == 1000);
  }
}

TEST_CASE("noise scales with the configured snr") {
  ChannelConfig high;
  high.snr_db_min = high.snr_db_max = 30.0;
  high.phase_jitter_bound = 0.0;
  ChannelConfig low = high;
  low.snr_db_min = low.snr_db_max = 0.0;
  const auto hi = generate_dataset(high, 1, 500);
  const auto lo = generate_dataset(low, 1, 500);
  const auto mean_abs_q_bpsk = [](const SignalDataset& ds) {
    double sum = 0.0;
    int n = 0;
    for (int s = 0; s < ds.size(); ++s) {
      if (ds.labels[static_cast<std::size_t>(s)] != 0) continue;
      for (int t = 0; t < kSymbolsPerSample; ++t) {
        sum += std::abs(ds.x(s, kSymbolsPerSample + t));
        ++n;
      }
    }
    return sum / n;
  };
  CHECK(mean_abs_q_bpsk(hi[0]) < 0.1);   // sigma ~ 0.022
  CHECK(mean_abs_q_bpsk(lo[0]) > 0.3);   // sigma ~ 0.71
}

TEST_CASE("invalid channel configs are rejected") {
  ChannelConfig cfg;
  cfg.snr_db_min = 10.0;
  cfg.snr_db_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = ChannelConfig{};
  cfg.phase_update_period = 0;
  CHECK_THROWS_AS(generate_dataset(cfg, 1, 10), std::invalid_argument);
  cfg = ChannelConfig{};
  cfg.phase_jitter_bound = -1.0;
  CHECK_THROWS_AS(generate_dataset(cfg, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(generate_dataset(ChannelConfig{}, 0, 10), std::invalid_argument);
}
