#include "frgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "frgame/error.hpp"

namespace frgame {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5)-1)/2

double advantage(const GameSpec& game, ClientId client, std::span<const double> opp) {
  return utility_participate(game, client, opp) - utility_free(game, client, opp);
}

double advantage_at(const GameSpec& game, ClientId client, const StrategyProfile& profile) {
  const std::vector<double> opp = opponents_of(game, client, profile);
  return advantage(game, client, opp);
}

// Best unilateral gain for `client` at `profile`; the objective is affine in
// own p so the corners bound every deviation.
double deviation_gain(double own_p, double adv) {
  return std::max({0.0, own_p * adv, -(1.0 - own_p) * adv});
}

bool near(double a, double b, double tol = kTieTolerance) { return std::abs(a - b) <= tol; }

}  // namespace

double clamp01(double x) {
  if (std::isnan(x)) throw std::invalid_argument("clamp01: NaN input");
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

BestResponse best_response(const GameSpec& game, ClientId client,
                           std::span<const double> opponent_free_probs) {
  const double adv = advantage(game, client, opponent_free_probs);
  BestResponse br;
  br.advantage = adv;
  if (adv > kTieTolerance) {
    br.kind = BestResponse::Kind::PureParticipate;
  } else if (adv < -kTieTolerance) {
    br.kind = BestResponse::Kind::PureFreeRide;
  } else {
    br.kind = BestResponse::Kind::Indifferent;
  }
  return br;
}

double indifference_residual(const GameSpec& game, ClientId client,
                             std::span<const double> opponent_free_probs) {
  // Weighted (u_P - u_F) minus c_i; identical to the participation advantage.
  return advantage(game, client, opponent_free_probs);
}

EquilibriumResult make_equilibrium_result(const GameSpec& game, StrategyProfile profile) {
  profile.validate();
  EquilibriumResult result;
  result.multipliers.resize(static_cast<std::size_t>(game.n_clients));
  bool pure = true;
  double worst = 0.0;
  for (int i = 0; i < game.n_clients; ++i) {
    const double adv = advantage_at(game, i, profile);
    const double p = profile[i];
    worst = std::max(worst, deviation_gain(p, adv));
    double mu1 = 0.0, mu2 = 0.0;
    if (p <= kTieTolerance) {
      mu1 = std::max(0.0, adv);
    } else if (p >= 1.0 - kTieTolerance) {
      mu2 = std::max(0.0, -adv);
    } else {
      pure = false;
    }
    result.multipliers[static_cast<std::size_t>(i)] = {mu1, mu2};
  }
  result.kind = pure ? EquilibriumResult::Kind::Pure : EquilibriumResult::Kind::Mixed;
  result.kkt_residual = worst;
  result.profile = std::move(profile);
  return result;
}

namespace {

// ---- two-player closed form ------------------------------------------------

struct TwoPlayerCoefficients {
  // advantage of client i given opponent free-riding prob q: a[i] + s[i] * q
  double a[2];
  double s[2];
};

TwoPlayerCoefficients two_player_coefficients(const GameSpec& game) {
  TwoPlayerCoefficients co{};
  for (int i = 0; i < 2; ++i) {
    const double opp0[] = {0.0};  // opponent participates
    const double opp1[] = {1.0};  // opponent free-rides
    const double adv_at_0 = advantage(game, i, opp0);
    const double adv_at_1 = advantage(game, i, opp1);
    co.a[i] = adv_at_0;
    co.s[i] = adv_at_1 - adv_at_0;
  }
  return co;
}

// Closed interval of q in [0,1] where a + s*q (>= 0 if want_nonneg, else <= 0);
// returns false if empty.
bool advantage_sign_interval(double a, double s, bool want_nonneg, double* lo, double* hi) {
  if (!want_nonneg) {
    a = -a;
    s = -s;
  }
  if (std::abs(s) < 1e-14) {
    if (a >= -kTieTolerance) {
      *lo = 0.0;
      *hi = 1.0;
      return true;
    }
    return false;
  }
  const double root = -a / s;
  if (s > 0.0) {
    *lo = std::max(0.0, root);
    *hi = 1.0;
  } else {
    *lo = 0.0;
    *hi = std::min(1.0, root);
  }
  if (*lo > *hi + 1e-15) return false;
  *lo = clamp01(*lo);
  *hi = clamp01(*hi);
  return true;
}

bool profile_in_family(const StrategyProfile& p, const MixedFamilySegment& fam,
                       double tol = kTieTolerance) {
  const int other = 1 - fam.free_client;
  if (!near(p[other], fam.fixed[other], tol)) return false;
  return p[fam.free_client] >= fam.lo - tol && p[fam.free_client] <= fam.hi + tol;
}

bool is_two_player_equilibrium(const GameSpec& game, const StrategyProfile& p) {
  for (int i = 0; i < 2; ++i) {
    const double adv = advantage_at(game, i, p);
    if (p[i] <= kTieTolerance) {
      if (adv < -kTieTolerance) return false;
    } else if (p[i] >= 1.0 - kTieTolerance) {
      if (adv > kTieTolerance) return false;
    } else {
      if (std::abs(adv) > kTieTolerance) return false;
    }
  }
  return true;
}

}  // namespace

TwoPlayerSolveResult two_player_equilibria(const GameSpec& game) {
  game.validate();
  if (game.n_clients != 2) throw std::invalid_argument("two_player_equilibria needs N = 2");
  const TwoPlayerCoefficients co = two_player_coefficients(game);

  TwoPlayerSolveResult result;
  std::vector<MixedFamilySegment> families;

  // Boundary families: one client pinned to a corner where the other is
  // exactly indifferent, the free coordinate ranging over the interval where
  // the pinned client's corner stays a best response.
  for (int pinned = 0; pinned < 2; ++pinned) {
    const int free = 1 - pinned;
    for (const double corner : {0.0, 1.0}) {
      // free client's advantage when the pinned client plays `corner`
      const double adv_free = co.a[free] + co.s[free] * corner;
      if (!near(adv_free, 0.0)) continue;
      double lo = 0.0, hi = 1.0;
      // pinned at 0 needs advantage >= 0; pinned at 1 needs <= 0
      if (!advantage_sign_interval(co.a[pinned], co.s[pinned], corner == 0.0, &lo, &hi)) continue;
      StrategyProfile fixed{0.0, 0.0};
      fixed[pinned] = corner;
      fixed[free] = lo;
      families.push_back(MixedFamilySegment{free, fixed, lo, hi});
    }
  }

  for (const MixedFamilySegment& fam : families) {
    StrategyProfile rep = fam.fixed;
    rep[fam.free_client] = 0.5 * (fam.lo + fam.hi);
    EquilibriumResult eq = make_equilibrium_result(game, rep);
    eq.kind = EquilibriumResult::Kind::MixedFamily;
    eq.family = fam;
    result.equilibria.push_back(std::move(eq));
  }

  auto already_reported = [&](const StrategyProfile& p) {
    for (const EquilibriumResult& eq : result.equilibria) {
      if (eq.family) {
        if (profile_in_family(p, *eq.family)) return true;
      } else if (near(eq.profile[0], p[0]) && near(eq.profile[1], p[1])) {
        return true;
      }
    }
    return false;
  };

  // Pure corners (weak best-response conditions).
  for (const double p0 : {0.0, 1.0}) {
    for (const double p1 : {0.0, 1.0}) {
      const StrategyProfile corner{p0, p1};
      if (!is_two_player_equilibrium(game, corner)) continue;
      if (already_reported(corner)) continue;
      result.equilibria.push_back(make_equilibrium_result(game, corner));
    }
  }

  // Interior mixed point: each client's own probability is chosen to make the
  // *other* client indifferent, so client 0's coordinate roots the other's
  // advantage.
  if (std::abs(co.s[1]) < 1e-14 || std::abs(co.s[0]) < 1e-14) {
    result.degenerate_mixed = true;
  } else {
    const StrategyProfile mixed{clamp01(-co.a[1] / co.s[1]), clamp01(-co.a[0] / co.s[0])};
    if (is_two_player_equilibrium(game, mixed) && !already_reported(mixed)) {
      result.equilibria.push_back(make_equilibrium_result(game, mixed));
    }
  }
  return result;
}

// ---- symmetric solver --------------------------------------------------------

double symmetric_incentive(const GameSpec& game, double p) {
  if (!game.is_symmetric()) throw std::invalid_argument("game is not symmetric");
  const std::vector<double> opp(static_cast<std::size_t>(game.n_clients - 1), clamp01(p));
  return advantage(game, 0, opp);
}

SymmetricSolveResult symmetric_equilibrium(const GameSpec& game) {
  game.validate();
  if (!game.is_symmetric())
    throw std::invalid_argument("symmetric_equilibrium needs symmetric rewards and equal costs");

  const auto g = [&](double p) { return symmetric_incentive(game, p); };
  const double g0 = g(0.0);
  const double g1 = g(1.0);

  // Interior roots: bracket sign changes on a fine grid, bisect each bracket.
  // Isolated exact zeros at grid points count; a flat-zero stretch does not
  // (those games are indifferent everywhere and the corners already qualify).
  constexpr int kScan = 1024;
  std::vector<double> grid_g(kScan + 1);
  for (int i = 0; i <= kScan; ++i) grid_g[static_cast<std::size_t>(i)] = g(static_cast<double>(i) / kScan);
  std::vector<double> roots;
  for (int i = 0; i < kScan; ++i) {
    const double pa = static_cast<double>(i) / kScan;
    const double pb = static_cast<double>(i + 1) / kScan;
    const double ga = grid_g[static_cast<std::size_t>(i)];
    const double gb = grid_g[static_cast<std::size_t>(i) + 1];
    if (ga == 0.0 && i > 0 && grid_g[static_cast<std::size_t>(i - 1)] != 0.0 && gb != 0.0) {
      roots.push_back(pa);
      continue;
    }
    if ((ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0)) {
      double lo = pa, hi = pb, glo = ga;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((glo < 0.0) == (gm < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
  }
  // keep strictly interior roots only
  std::erase_if(roots, [](double r) { return r <= 1e-12 || r >= 1.0 - 1e-12; });

  SymmetricSolveResult result;
  if (g0 >= 0.0) {
    result.p_star = 0.0;  // participation is a best response to all-participate
  } else if (g1 <= 0.0) {
    result.p_star = 1.0;  // free-riding is a best response to all-free-ride
  } else if (!roots.empty()) {
    result.p_star = roots.front();
  } else {
    // g(0) < 0 < g(1) guarantees a bracket; reaching here means scan failure
    throw GameError("symmetric incentive function has no detectable root");
  }

  if (g0 >= -kTieTolerance) result.all_p.push_back(0.0);
  for (double r : roots) result.all_p.push_back(r);
  if (g1 <= kTieTolerance) result.all_p.push_back(1.0);
  result.multiple_roots = roots.size() > 1;

  StrategyProfile profile(std::vector<double>(static_cast<std::size_t>(game.n_clients), result.p_star));
  result.equilibrium = make_equilibrium_result(game, std::move(profile));
  return result;
}

// ---- damped best-response iteration ------------------------------------------

namespace {

// One opponent's indifference root in client i's own strategy (affine in
// p_i), together with that opponent's current advantage. Only genuine sign
// changes count: an opponent whose best response never flips as p_i moves has
// no root. For N = 2 the single root is exactly the closed-form mixed
// equilibrium coordinate.
struct FlipRoot {
  double root;
  double opponent_advantage;
};

std::vector<FlipRoot> opponent_flip_roots(const GameSpec& game, const StrategyProfile& profile,
                                          int client) {
  std::vector<FlipRoot> roots;
  if (game.n_clients < 2) return roots;
  StrategyProfile at = profile;
  for (int j = 0; j < game.n_clients; ++j) {
    if (j == client) continue;
    const double now = advantage_at(game, j, at);
    at[client] = 0.0;
    const double h0 = advantage_at(game, j, at);
    at[client] = 1.0;
    const double h1 = advantage_at(game, j, at);
    at[client] = profile[client];
    if ((h0 < 0.0) == (h1 < 0.0)) continue;
    const double slope = h1 - h0;
    if (std::abs(slope) < 1e-14) continue;
    roots.push_back(FlipRoot{clamp01(-h0 / slope), now});
  }
  return roots;
}

}  // namespace

IterationResult best_response_iteration(const GameSpec& game, const StrategyProfile& initial,
                                        double damping, int max_iters) {
  game.validate();
  initial.validate();
  if (initial.size() != game.n_clients)
    throw std::invalid_argument("initial profile length must equal n_clients");
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("damping must be in (0,1]");

  IterationResult result;
  StrategyProfile p = initial;
  result.trajectory.push_back(p);
  const int n = game.n_clients;

  for (int iter = 1; iter <= max_iters; ++iter) {
    std::vector<double> target(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double adv = advantage_at(game, i, p);
      const std::vector<FlipRoot> roots = opponent_flip_roots(game, p, i);
      if (std::abs(adv) <= kTieTolerance) {
        // any own probability is a best response; aim at the opponents'
        // indifference point so mixed equilibria are reachable
        if (roots.empty()) {
          target[static_cast<std::size_t>(i)] = p[i];
        } else {
          double mean = 0.0;
          for (const FlipRoot& r : roots) mean += r.root;
          target[static_cast<std::size_t>(i)] = mean / static_cast<double>(roots.size());
        }
        continue;
      }
      const double corner = adv > 0.0 ? 0.0 : 1.0;
      double t = corner;
      // Overshooting a flip point of an opponent that is moving the same way
      // sets up the collective reversal that limit-cycles around interior
      // equilibria; stop at the first such point on the way. Opponents that
      // are indifferent or moving the other way pose no cycle risk, and a
      // root at the current position never pins a client.
      for (const FlipRoot& r : roots) {
        if ((r.opponent_advantage < 0.0) != (adv < 0.0) ||
            std::abs(r.opponent_advantage) <= kTieTolerance) {
          continue;
        }
        if (corner == 0.0 && r.root > 0.0 && r.root < p[i] - 1e-12 && r.root > t) t = r.root;
        if (corner == 1.0 && r.root < 1.0 && r.root > p[i] + 1e-12 && r.root < t) t = r.root;
      }
      target[static_cast<std::size_t>(i)] = t;
    }
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      const double next = p[i] + damping * (target[static_cast<std::size_t>(i)] - p[i]);
      change = std::max(change, std::abs(next - p[i]));
      p[i] = next;
    }
    result.trajectory.push_back(p);
    result.iterations = iter;
    if (change < 1e-10) break;
  }

  // Snap numerically-converged corners.
  for (int i = 0; i < n; ++i) {
    if (p[i] < 1e-9) p[i] = 0.0;
    if (p[i] > 1.0 - 1e-9) p[i] = 1.0;
  }
  result.final_profile = p;
  const VerifyResult check = verify_equilibrium(game, p, 1e-4);
  result.converged = check.pass;
  if (result.converged) result.equilibrium = make_equilibrium_result(game, p);
  return result;
}

// ---- global optimum ------------------------------------------------------------

namespace {

// Golden-section maximization of f on [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi, int iters) {
  double a = lo, b = hi;
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double coarse_step_floor(int n_clients) {
  switch (n_clients) {
    case 3: return 0.05;
    case 4: return 0.1;
    case 5: return 0.2;
    case 6: return 0.25;
    default: return 0.0;
  }
}

}  // namespace

GlobalOptimum global_optimum(const GameSpec& game, double grid_step, int refine_iters) {
  game.validate();
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    throw std::invalid_argument("grid_step must be in (0,1]");
  GlobalOptimum opt;
  opt.grid_step = grid_step;
  opt.refine_iters = refine_iters;
  const int n = game.n_clients;

  if (game.is_symmetric()) {
    const auto f = [&](double p) {
      return total_utility(game, StrategyProfile(std::vector<double>(static_cast<std::size_t>(n), p)));
    };
    const int steps = std::max(1, static_cast<int>(std::llround(1.0 / grid_step)));
    double best_p = 0.0, best_f = f(0.0);
    for (int i = 1; i <= steps; ++i) {
      const double p = static_cast<double>(i) / steps;
      const double v = f(p);
      if (v > best_f) {
        best_f = v;
        best_p = p;
      }
    }
    const double lo = std::max(0.0, best_p - 1.0 / steps);
    const double hi = std::min(1.0, best_p + 1.0 / steps);
    const double refined = golden_section_max(f, lo, hi, refine_iters);
    if (f(refined) > best_f) {
      best_p = refined;
      best_f = f(refined);
    }
    opt.profile = StrategyProfile(std::vector<double>(static_cast<std::size_t>(n), best_p));
    opt.total = best_f;
    return opt;
  }

  if (n > 6) {
    throw InstanceTooLargeError(
        "asymmetric full-grid optimization is capped at N = 6; use the symmetric-curve form");
  }
  // Full-grid scan at the (possibly coarsened) step, then coordinate-wise
  // golden-section refinement; the total utility is affine per coordinate, so
  // refinement recovers the line optimum regardless of the coarse step.
  const double step = std::max(grid_step, coarse_step_floor(n));
  const int steps = std::max(1, static_cast<int>(std::llround(1.0 / step)));
  StrategyProfile point(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  StrategyProfile best = point;
  double best_f = total_utility(game, point);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    int d = 0;
    while (d < n && ++idx[static_cast<std::size_t>(d)] > steps) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
    for (int i = 0; i < n; ++i) point[i] = static_cast<double>(idx[static_cast<std::size_t>(i)]) / steps;
    const double v = total_utility(game, point);
    if (v > best_f) {
      best_f = v;
      best = point;
    }
  }
  // Cyclic coordinate refinement.
  for (int sweep = 0; sweep < 32; ++sweep) {
    double improved = 0.0;
    for (int i = 0; i < n; ++i) {
      StrategyProfile trial = best;
      const auto line = [&](double v) {
        trial[i] = v;
        return total_utility(game, trial);
      };
      const double cand = golden_section_max(line, 0.0, 1.0, refine_iters);
      for (const double v : {cand, 0.0, 1.0}) {
        trial[i] = v;
        const double fv = total_utility(game, trial);
        if (fv > best_f) {
          improved = std::max(improved, fv - best_f);
          best_f = fv;
          best[i] = v;
        }
      }
      trial[i] = best[i];
    }
    if (improved < 1e-12) break;
  }
  opt.profile = best;
  opt.total = best_f;
  return opt;
}

VerifyResult verify_equilibrium(const GameSpec& game, const StrategyProfile& profile,
                                double epsilon) {
  game.validate();
  profile.validate();
  if (profile.size() != game.n_clients)
    throw std::invalid_argument("profile length must equal n_clients");
  VerifyResult result;
  result.worst_gain = 0.0;
  for (int i = 0; i < game.n_clients; ++i) {
    const std::vector<double> opp = opponents_of(game, i, profile);
    const double u_free = utility_free(game, i, opp);
    const double u_part = utility_participate(game, i, opp);
    const double own = profile[i];
    const double base = own * u_free + (1.0 - own) * u_part;
    for (int j = 0; j <= 1000; ++j) {
      const double cand = static_cast<double>(j) / 1000.0;
      const double gain = (cand * u_free + (1.0 - cand) * u_part) - base;
      if (gain > result.worst_gain) {
        result.worst_gain = gain;
        result.worst_client = i;
        result.worst_deviation = cand;
      }
    }
  }
  result.pass = result.worst_gain <= epsilon;
  return result;
}

double optimality_gap(const GameSpec& game, const EquilibriumResult& ne, const GlobalOptimum& opt) {
  if (!(opt.total > 0.0)) throw UndefinedGapError("optimality gap undefined: optimal total <= 0");
  return (opt.total - total_utility(game, ne.profile)) / opt.total;
}

std::optional<StrategyProfile> indifference_mixing_profile(const GameSpec& game) {
  game.validate();
  if (game.is_symmetric()) {
    const SymmetricSolveResult sym = symmetric_equilibrium(game);
    for (double r : sym.all_p) {
      if (r > kTieTolerance && r < 1.0 - kTieTolerance) {
        return StrategyProfile(std::vector<double>(static_cast<std::size_t>(game.n_clients), r));
      }
    }
    return std::nullopt;
  }
  if (game.n_clients == 2) {
    const TwoPlayerCoefficients co = two_player_coefficients(game);
    if (std::abs(co.s[0]) < 1e-14 || std::abs(co.s[1]) < 1e-14) return std::nullopt;
    const StrategyProfile mixed{clamp01(-co.a[1] / co.s[1]), clamp01(-co.a[0] / co.s[0])};
    if (mixed[0] > kTieTolerance && mixed[0] < 1.0 - kTieTolerance &&
        mixed[1] > kTieTolerance && mixed[1] < 1.0 - kTieTolerance &&
        is_two_player_equilibrium(game, mixed)) {
      return mixed;
    }
  }
  return std::nullopt;
}

}  // namespace frgame
