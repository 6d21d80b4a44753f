#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frgame/fictitious_play.hpp"
#include "frgame/equilibrium.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace frgame;
using namespace frgame::test;

namespace {

FictitiousPlayResult run(const GameSpec& game, int rounds, std::uint64_t seed = 0) {
  FictitiousPlayConfig cfg;
  cfg.max_rounds = rounds;
  cfg.seed = seed;
  return fp_run(game, cfg);
}

}  // namespace

TEST_CASE("belief update is an exact running average of the history") {
  const GameSpec game = example_two_client_game(0.2);
  const std::vector<double> mixing = fp_mixing_probabilities(game);
  RandomStream rng(42);
  FictitiousPlayState state = FictitiousPlayState::initial(2);
  for (int t = 0; t < 257; ++t) {
    state = fp_step(game, std::move(state), rng, mixing);
    const std::vector<double> recomputed = state.beliefs_from_history();
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(state.beliefs[static_cast<std::size_t>(i)] -
                     recomputed[static_cast<std::size_t>(i)]) <= 1e-12);
    }
  }
}

TEST_CASE("identical seeds produce bit-identical trajectories") {
  const GameSpec game = example_two_client_game(0.2);
  const FictitiousPlayResult a = run(game, 2000, 7);
  const FictitiousPlayResult b = run(game, 2000, 7);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t t = 0; t < a.trajectory.size(); ++t) {
    CHECK(a.trajectory[t] == b.trajectory[t]);
  }
}

TEST_CASE("dominant participation: both play P at once and absorb at (0,0)") {
  const GameSpec game = example_two_client_game(0.05);
  const std::vector<double> mixing = fp_mixing_probabilities(game);
  RandomStream rng(0);
  FictitiousPlayState state = FictitiousPlayState::initial(2);
  state = fp_step(game, std::move(state), rng, mixing);
  CHECK(state.actions[0][0] == Role::Participant);
  CHECK(state.actions[1][0] == Role::Participant);
  CHECK(state.beliefs[0] < 0.5);

  const FictitiousPlayResult r = run(game, 200);
  CHECK(r.final_beliefs[0] <= 0.02);
  CHECK(r.final_beliefs[1] <= 0.02);
}

TEST_CASE("dominant free-riding: both play F immediately") {
  const GameSpec game = example_two_client_game(0.4);
  const std::vector<double> mixing = fp_mixing_probabilities(game);
  RandomStream rng(3);
  FictitiousPlayState state = FictitiousPlayState::initial(2);
  state = fp_step(game, std::move(state), rng, mixing);
  CHECK(state.actions[0][0] == Role::FreeRider);
  CHECK(state.actions[1][0] == Role::FreeRider);

  const FictitiousPlayResult r = run(game, 200);
  CHECK(r.final_beliefs[0] >= 0.98);
  CHECK(r.final_beliefs[1] >= 0.98);
}

TEST_CASE("strict pure equilibria are absorbing over 1000 extra rounds") {
  for (const double c : {0.05, 0.4}) {
    const GameSpec game = example_two_client_game(c);
    const Role locked = c < 0.1 ? Role::Participant : Role::FreeRider;
    const std::vector<double> mixing = fp_mixing_probabilities(game);
    RandomStream rng(0);
    FictitiousPlayState state = FictitiousPlayState::initial(2);
    for (int t = 0; t < 1200; ++t) state = fp_step(game, std::move(state), rng, mixing);
    for (int i = 0; i < 2; ++i) {
      for (int t = 200; t < 1200; ++t) {
        REQUIRE(state.actions[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] == locked);
      }
    }
  }
}

TEST_CASE("mixed-equilibrium game: beliefs stay near (0.5, 0.5) over 10k rounds") {
  const GameSpec game = example_two_client_game(0.2);
  const FictitiousPlayResult r = run(game, 10000, 0);
  CHECK(std::abs(r.final_beliefs[0] - 0.5) <= 0.02);
  CHECK(std::abs(r.final_beliefs[1] - 0.5) <= 0.02);
  CHECK(r.equilibrium_verified);
}

TEST_CASE("convergence verdict implies the belief profile verifies at 0.02") {
  for (const double c : {0.05, 0.2, 0.4}) {
    const FictitiousPlayResult r = run(example_two_client_game(c), 10000, 1);
    CHECK(r.converged);
    CHECK(r.equilibrium_verified);
    CHECK(r.worst_deviation_gain <= 0.02);
  }
  const FictitiousPlayResult r3 = run(three_client_game(0.12), 10000, 0);
  CHECK(r3.converged);
  CHECK(r3.equilibrium_verified);
}

TEST_CASE("rounds = 1 yields exactly one recorded round") {
  const FictitiousPlayResult r = run(example_two_client_game(0.2), 1, 0);
  CHECK(r.rounds == 1);
  CHECK(r.trajectory.size() == 1);
  CHECK(!r.converged);
}

TEST_CASE("a client's response depends only on its own parameters and beliefs") {
  // same beliefs, client 1's cost perturbed: client 0's action is unchanged
  GameSpec a = example_two_client_game(0.05);
  GameSpec b = a;
  b.costs[1] = 0.35;
  const std::vector<double> mix_a = fp_mixing_probabilities(a);
  const std::vector<double> mix_b = fp_mixing_probabilities(b);
  RandomStream rng_a(5), rng_b(5);
  FictitiousPlayState sa = FictitiousPlayState::initial(2);
  FictitiousPlayState sb = FictitiousPlayState::initial(2);
  for (int t = 0; t < 3; ++t) {
    sa = fp_step(a, std::move(sa), rng_a, mix_a);
    sb = fp_step(b, std::move(sb), rng_b, mix_b);
    CHECK(sa.actions[0][static_cast<std::size_t>(t)] == sb.actions[0][static_cast<std::size_t>(t)]);
  }
}

TEST_CASE("fp_mixing_probabilities: equilibrium weight when mixed, fair coin otherwise") {
  const std::vector<double> mixed = fp_mixing_probabilities(example_two_client_game(0.2));
  CHECK(mixed[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(mixed[1] == doctest::Approx(0.5).epsilon(1e-9));
  // no interior equilibrium: exact fair coin
  CHECK(fp_mixing_probabilities(example_two_client_game(0.45)) ==
        std::vector<double>{0.5, 0.5});
  CHECK(fp_mixing_probabilities(example_two_client_game(0.05)) ==
        std::vector<double>{0.5, 0.5});
}
