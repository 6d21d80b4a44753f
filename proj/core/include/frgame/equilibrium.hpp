#ifndef FRGAME_EQUILIBRIUM_HPP
#define FRGAME_EQUILIBRIUM_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "frgame/game.hpp"
#include "frgame/types.hpp"

namespace frgame {

// Absolute tolerance on the participation advantage below which a client is
// treated as indifferent. Partition sums are exact to ~1e-13 at N <= 16.
constexpr double kTieTolerance = 1e-9;

// Box projection [x]_0^1: clamp to [0,1]. Throws on NaN.
double clamp01(double x);

struct BestResponse {
  enum class Kind { PureFreeRide, PureParticipate, Indifferent };
  Kind kind;
  // advantage = utility_participate - utility_free at the opponents' profile.
  double advantage;
};

// One boundary segment of equilibria: client `free_client` may play any
// p in [lo, hi] while the other clients hold `fixed` at a corner where the
// free client is exactly indifferent.
struct MixedFamilySegment {
  int free_client;
  StrategyProfile fixed;  // full profile; the free coordinate set to lo.
  double lo;
  double hi;
};

struct EquilibriumResult {
  enum class Kind { Pure, Mixed, MixedFamily };
  Kind kind = Kind::Pure;
  StrategyProfile profile;  // for MixedFamily: a representative point.
  // Max over clients of the best unilateral deviation gain at `profile`.
  double kkt_residual = 0.0;
  // Box-constraint multipliers (mu_{i,1}, mu_{i,2}) per client.
  std::vector<std::array<double, 2>> multipliers;
  std::optional<MixedFamilySegment> family;
};

struct TwoPlayerSolveResult {
  std::vector<EquilibriumResult> equilibria;
  // The interior-point denominator vanished for some client: the interior
  // candidate is undefined; pure/boundary cases still reported.
  bool degenerate_mixed = false;
};

struct SymmetricSolveResult {
  EquilibriumResult equilibrium;  // the primary symmetric equilibrium
  double p_star = 0.0;
  // Every symmetric equilibrium probability found (corner conditions plus all
  // bracketed interior roots of the incentive function).
  std::vector<double> all_p;
  bool multiple_roots = false;
};

struct IterationResult {
  bool converged = false;
  EquilibriumResult equilibrium;  // meaningful when converged
  StrategyProfile final_profile;
  std::vector<StrategyProfile> trajectory;
  int iterations = 0;
};

struct GlobalOptimum {
  StrategyProfile profile;
  double total = 0.0;
  double grid_step = 0.0;
  int refine_iters = 0;
};

struct VerifyResult {
  bool pass = false;
  int worst_client = -1;
  double worst_deviation = 0.0;  // the own-probability that gains most
  double worst_gain = 0.0;
};

// Best response of `client` to the opponents' strategies. The objective is
// affine in own p, so the response is a corner unless indifferent.
BestResponse best_response(const GameSpec& game, ClientId client,
                           std::span<const double> opponent_free_probs);

// KKT stationarity value of the box-constrained best-response problem:
// partition-weighted mean of (u_P - u_F) minus c_i. Zero means the client
// can mix with both box multipliers at zero.
double indifference_residual(const GameSpec& game, ClientId client,
                             std::span<const double> opponent_free_probs);

// All Nash equilibria of a 2-client game: pure corners, boundary mixed
// families under the exact-equality conditions, and the interior mixed point.
// Points already contained in a reported family are not repeated.
TwoPlayerSolveResult two_player_equilibria(const GameSpec& game);

// Symmetric equilibrium p* (all clients play p*) for symmetric games:
// 0 if participation is a best response against all-participate, 1 if
// free-riding is against all-free-ride, else the bisection root of the
// symmetric incentive function g on (0,1) to 1e-9.
SymmetricSolveResult symmetric_equilibrium(const GameSpec& game);

// Symmetric incentive function g(p): expected reward gain of participating
// over free-riding minus c, when every opponent free-rides with probability p.
double symmetric_incentive(const GameSpec& game, double p);

// Damped simultaneous best-response iteration for general (asymmetric) games.
// Indifferent clients aim at the root, in their own strategy, of the mean of
// the opponents' indifference residuals; a corner target is clipped at that
// root when it lies strictly on the way (plain corner targets limit-cycle
// around interior equilibria).
IterationResult best_response_iteration(const GameSpec& game, const StrategyProfile& initial,
                                        double damping = 0.5, int max_iters = 10000);

// Cooperative optimum of the total utility. Symmetric games are searched over
// one common p (grid + golden section); asymmetric games over the N-cube
// (N <= 6) with a coarse grid and coordinate-wise golden-section refinement.
GlobalOptimum global_optimum(const GameSpec& game, double grid_step = 0.01,
                             int refine_iters = 64);

// Unilateral-deviation check: sweeps every client's own probability over a
// 0.001 grid plus the corners; passes iff no deviation gains more than eps.
VerifyResult verify_equilibrium(const GameSpec& game, const StrategyProfile& profile,
                                double epsilon = 1e-4);

// (opt.total - total_utility(ne.profile)) / opt.total; throws if opt <= 0.
double optimality_gap(const GameSpec& game, const EquilibriumResult& ne,
                      const GlobalOptimum& opt);

// Interior per-client mixing probabilities (each client's equilibrium mixing
// weight) when the game has a fully-mixed equilibrium: the closed-form point
// for N = 2, the symmetric interior root for symmetric games. Used as the
// fictitious-play tie-break; empty when no interior equilibrium exists.
std::optional<StrategyProfile> indifference_mixing_profile(const GameSpec& game);

// Fills kind, kkt_residual and multipliers for a candidate profile.
EquilibriumResult make_equilibrium_result(const GameSpec& game, StrategyProfile profile);

}  // namespace frgame

#endif  // FRGAME_EQUILIBRIUM_HPP
