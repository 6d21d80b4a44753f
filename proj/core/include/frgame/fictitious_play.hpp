#ifndef FRGAME_FICTITIOUS_PLAY_HPP
#define FRGAME_FICTITIOUS_PLAY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "frgame/game.hpp"
#include "frgame/rng.hpp"
#include "frgame/types.hpp"

namespace frgame {

// Repeated play where every client best-responds to the empirical frequency
// of its opponents' past actions. Beliefs carry one phantom observation at
// initial_belief so they are defined at round 0 and converge as O(1/t).
struct FictitiousPlayState {
  int round = 0;
  std::vector<std::vector<Role>> actions;  // per client, one entry per round
  std::vector<double> beliefs;             // empirical free-riding frequencies
  double initial_belief = 0.5;
  double prior_weight = 1.0;

  static FictitiousPlayState initial(int n_clients, double initial_belief = 0.5);

  // Recompute beliefs from the stored action history (the incremental update
  // must match this exactly).
  std::vector<double> beliefs_from_history() const;
};

struct FictitiousPlayConfig {
  int max_rounds = 10000;
  std::uint64_t seed = 0;
  int convergence_window = 500;
  double convergence_tol = 1e-3;
  double initial_belief = 0.5;
};

struct FictitiousPlayResult {
  bool converged = false;
  int rounds = 0;
  std::vector<double> final_beliefs;
  // trajectory[t] = beliefs after round t+1 (one row per played round).
  std::vector<std::vector<double>> trajectory;
  bool equilibrium_verified = false;  // verify_equilibrium at eps = 0.02
  double worst_deviation_gain = 0.0;
};

// One simultaneous round: every client best-responds to current opponent
// beliefs; indifferent clients sample free-riding with `mixing[i]` (the
// game's mixed-equilibrium weight when defined, else 0.5).
FictitiousPlayState fp_step(const GameSpec& game, FictitiousPlayState state, RandomStream& rng,
                            const std::vector<double>& mixing);

// Runs fp_step until max_rounds or until every belief has changed by less
// than convergence_tol for convergence_window consecutive rounds.
FictitiousPlayResult fp_run(const GameSpec& game, const FictitiousPlayConfig& config);

// Per-client tie-break mixing probabilities for fp_step.
std::vector<double> fp_mixing_probabilities(const GameSpec& game);

}  // namespace frgame

#endif  // FRGAME_FICTITIOUS_PLAY_HPP
