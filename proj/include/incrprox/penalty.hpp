#pragma once

#include <optional>
#include <vector>

#include "incrprox/engine.hpp"

namespace incrprox {

/// Per-set penalty weights gamma_1..gamma_m with
/// gamma_k > L + gamma_1 + ... + gamma_{k-1}.
struct PenaltyLadder {
  double lipschitz = 0.0;
  double margin = 0.0;
  std::vector<double> gammas;

  /// Smallest slack gamma_k - (L + sum_{j<k} gamma_j) over the ladder.
  double min_slack() const;
};

/// gamma_k = (1 + margin) 2^{k-1} L. Each rung exceeds the ladder
/// inequality by exactly margin * L. Throws ParameterError unless
/// L > 0, margin > 0 and m >= 1.
PenaltyLadder build_ladder(double lipschitz, std::size_t m, double margin);

/// Single weight (1 + margin) 2^{m-1} L, the top rung of the ladder.
double common_penalty(double lipschitz, std::size_t m, double margin);

/// Max subgradient norm of `fn` over the corners of [lo, hi] plus `samples`
/// uniform points drawn with `seed`.
double estimate_lipschitz(const ConvexFunction &fn, const Vector &lo,
                          const Vector &hi, std::size_t samples,
                          std::uint64_t seed);

struct PenaltyWeights {
  std::optional<double> lipschitz;
  std::optional<double> gamma;       // common weight override
  std::optional<double> margin;      // default 0.1
  std::optional<std::vector<double>> gammas; // explicit per-set weights
};

/// Resolve the per-set weights: explicit list, common override, or the
/// common ladder-derived value from L. Throws ConfigError when none of
/// these is available.
std::vector<double> resolve_penalties(const PenaltyWeights &w,
                                      std::size_t num_sets);

/// Whole-space problem: the base components plus one component per set
/// whose prox part is gamma_i * dist(.; X_i) (subgradient part zero). The
/// base problem's own constraint is dropped; pass it among `sets` to keep
/// it as a penalty.
Problem penalize(const Problem &base, const std::vector<SetPtr> &sets,
                 const PenaltyWeights &weights);

struct FeasibilityStep {
  Vector y; // after the subgradient step on h
  Vector z; // after the prox step on f
  Vector x_next;
};

/// y = x - alpha h'(x); z = prox_f(y); x+ = interpolated projection of z
/// onto `set` with beta = alpha*gamma/dist(z; set).
FeasibilityStep feasibility_step(const Vector &x, const ComponentPair &comp,
                                 const ConstraintSet &set, double gamma,
                                 double alpha, const Tolerances &tol = {});

/// Incremental solver for  min sum_i (f_i + h_i)  over the intersection of
/// the X_i, via the distance penalty. `objective` is empty (pure
/// feasibility) or holds one component per set.
struct FeasibilityProblem {
  std::size_t dim = 0;
  std::vector<SetPtr> sets;
  std::vector<ComponentPair> objective;
  double gamma = 0.0;

  void validate() const;
  /// Penalized objective sum_i (f_i + h_i + gamma dist(x; X_i)).
  double penalized_value(const Vector &x) const;
  double max_distance(const Vector &x) const;
};

/// Cycle through the sets with `feasibility_step`. The trace's F column is
/// the penalized objective; dist_opt is the largest distance to any set.
Trace run_feasibility(const FeasibilityProblem &problem, const RunConfig &config);

/// Components c * max{0, g_j(.)} (subgradient part) with zero prox part.
std::vector<ComponentPair>
max_penalty_reformulate(const std::vector<FunctionPtr> &constraints, double c);

} // namespace incrprox
