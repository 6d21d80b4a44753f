#include "frgame/fictitious_play.hpp"

#include <cmath>
#include <stdexcept>

#include "frgame/equilibrium.hpp"

namespace frgame {

FictitiousPlayState FictitiousPlayState::initial(int n_clients, double initial_belief) {
  if (n_clients < 1) throw std::invalid_argument("fictitious play needs at least one client");
  if (!(initial_belief >= 0.0 && initial_belief <= 1.0))
    throw std::invalid_argument("initial belief must be a probability");
  FictitiousPlayState s;
  s.round = 0;
  s.actions.resize(static_cast<std::size_t>(n_clients));
  s.beliefs.assign(static_cast<std::size_t>(n_clients), initial_belief);
  s.initial_belief = initial_belief;
  return s;
}

std::vector<double> FictitiousPlayState::beliefs_from_history() const {
  std::vector<double> out(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    double freerides = 0.0;
    for (const Role a : actions[i]) {
      if (a == Role::FreeRider) freerides += 1.0;
    }
    out[i] = (prior_weight * initial_belief + freerides) /
             (prior_weight + static_cast<double>(actions[i].size()));
  }
  return out;
}

std::vector<double> fp_mixing_probabilities(const GameSpec& game) {
  if (const auto mixed = indifference_mixing_profile(game)) {
    return mixed->probs;
  }
  return std::vector<double>(static_cast<std::size_t>(game.n_clients), 0.5);
}

FictitiousPlayState fp_step(const GameSpec& game, FictitiousPlayState state, RandomStream& rng,
                            const std::vector<double>& mixing) {
  const int n = game.n_clients;
  if (static_cast<int>(state.beliefs.size()) != n)
    throw std::invalid_argument("state size does not match the game");

  // Simultaneous responses to the beliefs from past rounds. Each client uses
  // only its own utility parameters and the broadcast action frequencies.
  std::vector<Role> played(static_cast<std::size_t>(n));
  std::vector<int> indifferent;
  std::vector<double> opp(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    int k = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i) opp[static_cast<std::size_t>(k++)] = state.beliefs[static_cast<std::size_t>(j)];
    }
    const BestResponse br = best_response(game, i, opp);
    switch (br.kind) {
      case BestResponse::Kind::PureFreeRide:
        played[static_cast<std::size_t>(i)] = Role::FreeRider;
        break;
      case BestResponse::Kind::PureParticipate:
        played[static_cast<std::size_t>(i)] = Role::Participant;
        break;
      case BestResponse::Kind::Indifferent:
        indifferent.push_back(i);
        break;
    }
  }
  if (!indifferent.empty()) {
    // One shared draw per round: client i plays F iff u < mixing[i], so each
    // marginal is the mixing probability. Independent draws would break the
    // symmetric belief cycle at an exact tie and lock anti-coordination games
    // into a pure equilibrium from the first asymmetric outcome.
    const double u = rng.uniform();
    for (const int i : indifferent) {
      played[static_cast<std::size_t>(i)] =
          u < mixing[static_cast<std::size_t>(i)] ? Role::FreeRider : Role::Participant;
    }
  }

  const double t = static_cast<double>(state.round);
  for (int i = 0; i < n; ++i) {
    state.actions[static_cast<std::size_t>(i)].push_back(played[static_cast<std::size_t>(i)]);
    const double was_f = played[static_cast<std::size_t>(i)] == Role::FreeRider ? 1.0 : 0.0;
    // running average with the phantom prior observation
    state.beliefs[static_cast<std::size_t>(i)] =
        (state.beliefs[static_cast<std::size_t>(i)] * (state.prior_weight + t) + was_f) /
        (state.prior_weight + t + 1.0);
  }
  state.round += 1;
  return state;
}

FictitiousPlayResult fp_run(const GameSpec& game, const FictitiousPlayConfig& config) {
  game.validate();
  if (config.max_rounds < 1) throw std::invalid_argument("fp_run needs rounds >= 1");

  const std::vector<double> mixing = fp_mixing_probabilities(game);
  FictitiousPlayState state = FictitiousPlayState::initial(game.n_clients, config.initial_belief);
  RandomStream rng(config.seed);

  FictitiousPlayResult result;
  result.trajectory.reserve(static_cast<std::size_t>(config.max_rounds));
  int stable_rounds = 0;
  for (int t = 1; t <= config.max_rounds; ++t) {
    const std::vector<double> before = state.beliefs;
    state = fp_step(game, std::move(state), rng, mixing);
    result.trajectory.push_back(state.beliefs);
    double change = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
      change = std::max(change, std::abs(state.beliefs[i] - before[i]));
    }
    stable_rounds = change < config.convergence_tol ? stable_rounds + 1 : 0;
    if (stable_rounds >= config.convergence_window) {
      result.converged = true;
      break;
    }
  }
  result.rounds = state.round;
  result.final_beliefs = state.beliefs;

  const VerifyResult check = verify_equilibrium(game, StrategyProfile(state.beliefs), 0.02);
  result.equilibrium_verified = check.pass;
  result.worst_deviation_gain = check.worst_gain;
  return result;
}

}  // namespace frgame
