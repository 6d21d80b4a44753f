#include <benchmark/benchmark.h>

#include "frgame/equilibrium.hpp"
#include "frgame/fictitious_play.hpp"
#include "frgame/game.hpp"
#include "frgame/rng.hpp"
#include "frgame/signal.hpp"
#include "frgame/classifier.hpp"

namespace {

using namespace frgame;

GameSpec symmetric_game(int n, double cost) {
  GameSpec game;
  game.n_clients = n;
  game.costs.assign(static_cast<std::size_t>(n), cost);
  std::vector<double> curve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) curve[static_cast<std::size_t>(k)] = 0.95 - 0.45 * std::pow(0.6, k);
  game.rewards = RewardModel::symmetric_curve(curve);
  return game;
}

GameSpec subset_game(int n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<RewardEntry> entries;
  for (int i = 0; i < n; ++i) {
    const ClientMask others = ((ClientMask{1} << n) - 1) & ~(ClientMask{1} << i);
    ClientMask sub = others;
    while (true) {
      entries.push_back({i, Role::FreeRider, sub, 0.5 * rng.uniform()});
      entries.push_back({i, Role::Participant, sub, 0.5 + 0.5 * rng.uniform()});
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  }
  GameSpec game;
  game.n_clients = n;
  game.costs.assign(static_cast<std::size_t>(n), 0.1);
  game.rewards = RewardModel::subset_table(n, entries);
  return game;
}

void BM_UtilitySymmetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GameSpec game = symmetric_game(n, 0.15);
  const StrategyProfile profile(std::vector<double>(static_cast<std::size_t>(n), 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_utility(game, profile));
  }
}
BENCHMARK(BM_UtilitySymmetric)->Arg(3)->Arg(10)->Arg(20);

void BM_UtilitySubsetTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GameSpec game = subset_game(n, 1);
  const StrategyProfile profile(std::vector<double>(static_cast<std::size_t>(n), 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_utility(game, profile));
  }
}
BENCHMARK(BM_UtilitySubsetTable)->Arg(2)->Arg(8)->Arg(12);

void BM_TwoPlayerSolve(benchmark::State& state) {
  const GameSpec game = symmetric_game(2, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_player_equilibria(game));
  }
}
BENCHMARK(BM_TwoPlayerSolve);

void BM_SymmetricSolve(benchmark::State& state) {
  const GameSpec game = symmetric_game(static_cast<int>(state.range(0)), 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetric_equilibrium(game));
  }
}
BENCHMARK(BM_SymmetricSolve)->Arg(2)->Arg(10)->Arg(20);

void BM_GlobalOptimumSymmetric(benchmark::State& state) {
  const GameSpec game = symmetric_game(static_cast<int>(state.range(0)), 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(global_optimum(game));
  }
}
BENCHMARK(BM_GlobalOptimumSymmetric)->Arg(2)->Arg(10);

void BM_FictitiousPlayRounds(benchmark::State& state) {
  const GameSpec game = symmetric_game(2, 0.2);
  FictitiousPlayConfig cfg;
  cfg.max_rounds = static_cast<int>(state.range(0));
  cfg.convergence_window = cfg.max_rounds;  // never stop early
  for (auto _ : state) {
    benchmark::DoNotOptimize(fp_run(game, cfg));
  }
}
BENCHMARK(BM_FictitiousPlayRounds)->Arg(1000);

void BM_TrainLocalEpoch(benchmark::State& state) {
  ChannelConfig chan;
  const auto data = generate_dataset(chan, 1, 800);
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_local(model, data[0].x, data[0].labels, 1, AdamConfig{}, 3));
  }
}
BENCHMARK(BM_TrainLocalEpoch);

}  // namespace

BENCHMARK_MAIN();
