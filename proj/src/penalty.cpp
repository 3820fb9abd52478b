#include "incrprox/penalty.hpp"

#include <cmath>
#include <limits>

#include "incrprox/functions.hpp"
#include "incrprox/prox.hpp"
#include "incrprox/sets.hpp"

namespace incrprox {

double PenaltyLadder::min_slack() const {
  double acc = lipschitz;
  double slack = std::numeric_limits<double>::infinity();
  for (double g : gammas) {
    slack = std::min(slack, g - acc);
    acc += g;
  }
  return slack;
}

PenaltyLadder build_ladder(double lipschitz, std::size_t m, double margin) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz))
    throw ParameterError("build_ladder: L must be positive");
  if (!(margin > 0.0) || !std::isfinite(margin))
    throw ParameterError("build_ladder: margin must be positive");
  if (m == 0)
    throw ParameterError("build_ladder: need at least one set");
  PenaltyLadder ladder{lipschitz, margin, {}};
  ladder.gammas.reserve(m);
  double rung = (1.0 + margin) * lipschitz;
  for (std::size_t k = 0; k < m; ++k, rung *= 2.0)
    ladder.gammas.push_back(rung);
  return ladder;
}

double common_penalty(double lipschitz, std::size_t m, double margin) {
  return build_ladder(lipschitz, m, margin).gammas.back();
}

double estimate_lipschitz(const ConvexFunction &fn, const Vector &lo,
                          const Vector &hi, std::size_t samples,
                          std::uint64_t seed) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw ConfigError("estimate_lipschitz: bad sampling box");
  const auto n = lo.size();
  double best = 0.0;
  if (n <= 16) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Vector corner(n);
      for (Eigen::Index j = 0; j < n; ++j)
        corner[j] = (mask >> j) & 1 ? hi[j] : lo[j];
      best = std::max(best, fn.subgradient(corner).norm());
    }
  }
  SplitMix64 rng(seed);
  Vector p(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < n; ++j)
      p[j] = lo[j] + (hi[j] - lo[j]) * rng.uniform();
    best = std::max(best, fn.subgradient(p).norm());
  }
  return best;
}

std::vector<double> resolve_penalties(const PenaltyWeights &w,
                                      std::size_t num_sets) {
  if (w.gammas) {
    if (w.gammas->size() != num_sets)
      throw ConfigError("penalty.gammas: expected one weight per set");
    for (double g : *w.gammas)
      if (!(g > 0.0))
        throw ConfigError("penalty.gammas: weights must be positive");
    return *w.gammas;
  }
  if (w.gamma) {
    if (!(*w.gamma > 0.0))
      throw ConfigError("penalty.gamma: must be positive");
    return std::vector<double>(num_sets, *w.gamma);
  }
  if (!w.lipschitz)
    throw ConfigError(
        "penalty.lipschitz: required when no explicit gamma is given");
  return std::vector<double>(
      num_sets, common_penalty(*w.lipschitz, num_sets, w.margin.value_or(0.1)));
}

Problem penalize(const Problem &base, const std::vector<SetPtr> &sets,
                 const PenaltyWeights &weights) {
  if (sets.empty())
    throw ConfigError("penalize: need at least one set");
  const auto gammas = resolve_penalties(weights, sets.size());
  Problem out;
  out.dim = base.dim;
  out.components = base.components;
  for (std::size_t i = 0; i < sets.size(); ++i)
    out.components.push_back({make_distance(sets[i], gammas[i]), make_zero(),
                              "dist_" + std::to_string(i + 1)});
  out.constraint = make_whole_space();
  out.optimal_value = base.optimal_value;
  out.optimal_set = base.optimal_set;
  return out;
}

FeasibilityStep feasibility_step(const Vector &x, const ComponentPair &comp,
                                 const ConstraintSet &set, double gamma,
                                 double alpha, const Tolerances &tol) {
  if (!(alpha > 0.0))
    throw ParameterError("feasibility_step: alpha must be positive");
  if (!(gamma > 0.0))
    throw ParameterError("feasibility_step: gamma must be positive");
  FeasibilityStep s;
  s.y = comp.subgrad_part->is_zero()
            ? x
            : Vector(x - alpha * comp.subgrad_part->subgradient(x));
  s.z = comp.prox_part->is_zero() ? s.y
                                  : comp.prox_part->prox(s.y, alpha, nullptr, tol);
  s.x_next = interpolated_projection(s.z, set, gamma, alpha);
  return s;
}

void FeasibilityProblem::validate() const {
  if (dim == 0)
    throw ConfigError("feasibility: dimension must be positive");
  if (sets.empty())
    throw ConfigError("feasibility.sets: need at least one set");
  for (const auto &s : sets)
    if (!s)
      throw ConfigError("feasibility.sets: null set");
  if (!objective.empty() && objective.size() != sets.size())
    throw ConfigError(
        "feasibility.objective: need zero components or one per set");
  if (!(gamma > 0.0))
    throw ConfigError("feasibility.gamma: must be positive");
}

double FeasibilityProblem::penalized_value(const Vector &x) const {
  double v = 0.0;
  for (const auto &c : objective)
    v += c.value(x);
  for (const auto &s : sets)
    v += gamma * s->distance(x);
  return v;
}

double FeasibilityProblem::max_distance(const Vector &x) const {
  double d = 0.0;
  for (const auto &s : sets)
    d = std::max(d, s->distance(x));
  return d;
}

Trace run_feasibility(const FeasibilityProblem &problem,
                      const RunConfig &config) {
  problem.validate();
  const Vector x0 = config.x0 ? *config.x0
                              : Vector::Zero(static_cast<Eigen::Index>(problem.dim));
  if (static_cast<std::size_t>(x0.size()) != problem.dim)
    throw ConfigError("x0: dimension does not match feasibility problem");

  const ComponentPair trivial{make_zero(), make_zero(), "zero"};
  const Tolerances tol = config.tol;

  LoopSpec spec;
  spec.m = problem.sets.size();
  spec.x0 = x0;
  spec.evaluate = [&](const Vector &x) { return problem.penalized_value(x); };
  spec.dist_opt = [&](const Vector &x) -> std::optional<double> {
    return problem.max_distance(x);
  };
  spec.step = [&](std::uint64_t k, std::size_t i, double alpha,
                  const Vector &x) -> Vector {
    const ComponentPair &comp =
        problem.objective.empty() ? trivial : problem.objective[i];
    FeasibilityStep s =
        feasibility_step(x, comp, *problem.sets[i], problem.gamma, alpha, tol);
    if (config.observer)
      config.observer(StepRecord{k, i + 1, alpha, x, s.z, s.x_next});
    return std::move(s.x_next);
  };
  spec.ordering = config.ordering;
  spec.seed = config.seed;
  spec.schedule = config.schedule;
  spec.limits = config.limits;
  spec.timing = config.timing;

  TraceMeta meta;
  meta.variant = "feasibility";
  return run_loop(spec, std::move(meta));
}

std::vector<ComponentPair>
max_penalty_reformulate(const std::vector<FunctionPtr> &constraints, double c) {
  if (!(c > 0.0))
    throw ParameterError("max_penalty_reformulate: c must be positive");
  std::vector<ComponentPair> out;
  out.reserve(constraints.size());
  for (std::size_t j = 0; j < constraints.size(); ++j)
    out.push_back({make_zero(), make_max_penalty(constraints[j], c),
                   "max_penalty_" + std::to_string(j + 1)});
  return out;
}

} // namespace incrprox
