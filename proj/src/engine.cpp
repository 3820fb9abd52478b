#include "incrprox/engine.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "incrprox/functions.hpp"
#include "incrprox/sets.hpp"

namespace incrprox {

namespace {

// Oracle-instrumented step kernels. `log` may be null.

StepResult kernel_A(const Vector &x, const ComponentPair &comp,
                    const ConstraintSet &X, const ConstraintSet *prox_set,
                    double alpha, const Tolerances &tol, OracleLog *log) {
  StepResult r;
  r.z = comp.prox_part->prox(x, alpha, prox_set, tol);
  if (comp.subgrad_part->is_zero()) {
    // z already solves a prox over X; re-projecting could perturb the last
    // bit on curved sets and break the reduction to the pure prox step
    r.x_next = prox_set ? r.z : X.project(r.z);
    if (log)
      log->record((x - r.z) / alpha);
    return r;
  }
  const Vector g = comp.subgrad_part->subgradient(r.z);
  r.x_next = X.project(r.z - alpha * g);
  if (log) {
    log->record((x - r.z) / alpha);
    log->record(g);
  }
  return r;
}

StepResult kernel_C(const Vector &x, const ComponentPair &comp,
                    const ConstraintSet &X, double alpha, const Tolerances &tol,
                    OracleLog *log) {
  StepResult r;
  if (comp.subgrad_part->is_zero()) {
    r.z = x;
  } else {
    const Vector g = comp.subgrad_part->subgradient(x);
    r.z = x - alpha * g;
    if (log)
      log->record(g);
  }
  r.x_next = comp.prox_part->prox(r.z, alpha, &X, tol);
  if (log) {
    log->record((r.z - r.x_next) / alpha);
    log->record(comp.prox_part->subgradient(x));
  }
  return r;
}

Vector subgradient_direction(const ComponentPair &comp, const Vector &x) {
  const bool f_zero = comp.prox_part->is_zero();
  const bool h_zero = comp.subgrad_part->is_zero();
  if (f_zero && h_zero)
    return Vector::Zero(x.size());
  if (f_zero)
    return comp.subgrad_part->subgradient(x);
  if (h_zero)
    return comp.prox_part->subgradient(x);
  return comp.prox_part->subgradient(x) + comp.subgrad_part->subgradient(x);
}

Vector kernel_prox_only(const Vector &x, const ComponentPair &comp,
                        const ConstraintSet &X, double alpha,
                        const Tolerances &tol) {
  if (comp.subgrad_part->is_zero())
    return comp.prox_part->prox(x, alpha, &X, tol);
  if (comp.prox_part->is_zero())
    return comp.subgrad_part->prox(x, alpha, &X, tol);
  const SumFunction sum({comp.prox_part, comp.subgrad_part});
  return sum.prox(x, alpha, &X, tol);
}

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("stepsize must be positive");
}

} // namespace

std::string to_string(Variant v) {
  switch (v) {
  case Variant::ProxThenSubgrad:
    return "prox_then_subgrad";
  case Variant::UnconstrainedProxThenSubgrad:
    return "unconstrained_prox_then_subgrad";
  case Variant::SubgradThenProx:
    return "subgrad_then_prox";
  case Variant::SubgradOnly:
    return "subgrad_only";
  case Variant::ProxOnly:
    return "prox_only";
  case Variant::GradMomentum:
    return "grad_momentum";
  case Variant::AggregatedGrad:
    return "aggregated_grad";
  }
  return "prox_then_subgrad";
}

Variant variant_from_string(const std::string &name) {
  for (Variant v :
       {Variant::ProxThenSubgrad, Variant::UnconstrainedProxThenSubgrad,
        Variant::SubgradThenProx, Variant::SubgradOnly, Variant::ProxOnly,
        Variant::GradMomentum, Variant::AggregatedGrad})
    if (to_string(v) == name)
      return v;
  // Short aliases for the three combined variants.
  if (name == "A")
    return Variant::ProxThenSubgrad;
  if (name == "B")
    return Variant::UnconstrainedProxThenSubgrad;
  if (name == "C")
    return Variant::SubgradThenProx;
  throw ConfigError("algorithm.variant: unknown variant '" + name + "'");
}

StepResult step_variant_A(const Vector &x, const ComponentPair &comp,
                          const ConstraintSet &X, double alpha,
                          const Tolerances &tol) {
  require_positive_alpha(alpha);
  return kernel_A(x, comp, X, &X, alpha, tol, nullptr);
}

StepResult step_variant_B(const Vector &x, const ComponentPair &comp,
                          const ConstraintSet &X, double alpha,
                          const Tolerances &tol) {
  require_positive_alpha(alpha);
  return kernel_A(x, comp, X, nullptr, alpha, tol, nullptr);
}

StepResult step_variant_C(const Vector &x, const ComponentPair &comp,
                          const ConstraintSet &X, double alpha,
                          const Tolerances &tol) {
  require_positive_alpha(alpha);
  return kernel_C(x, comp, X, alpha, tol, nullptr);
}

Vector step_subgradient(const Vector &x, const ComponentPair &comp,
                        const ConstraintSet &X, double alpha) {
  require_positive_alpha(alpha);
  return X.project(x - alpha * subgradient_direction(comp, x));
}

Vector step_prox(const Vector &x, const ComponentPair &comp,
                 const ConstraintSet &X, double alpha, const Tolerances &tol) {
  require_positive_alpha(alpha);
  return kernel_prox_only(x, comp, X, alpha, tol);
}

Vector component_gradient(const ComponentPair &comp, const Vector &x) {
  return subgradient_direction(comp, x);
}

RunState::RunState(Vector x0, std::size_t m)
    : x(x0), prev_x(x0), window(m), aggregate(Vector::Zero(x0.size())) {
  if (m == 0)
    throw ConfigError("run state: component count must be positive");
}

Vector step_momentum(RunState &state, const ComponentPair &comp, double alpha,
                     double beta) {
  require_positive_alpha(alpha);
  if (!(beta >= 0.0 && beta < 1.0))
    throw ParameterError("momentum beta must lie in [0, 1)");
  const Vector g = component_gradient(comp, state.x);
  Vector next = state.x - alpha * g + beta * (state.x - state.prev_x);
  state.prev_x = state.x;
  state.x = next;
  ++state.k;
  return next;
}

Vector step_aggregated(RunState &state, const ComponentPair &comp,
                       double alpha) {
  require_positive_alpha(alpha);
  const std::uint64_t k = state.k;
  const std::size_t m = state.window;
  Vector g = component_gradient(comp, state.x);
  state.aggregate += g;
  state.history.push_back(std::move(g));
  if (state.history.size() > m) {
    state.aggregate -= state.history.front();
    state.history.pop_front();
  }
  // Refresh the running sum once per window to bound accumulated rounding.
  if (k % m == m - 1) {
    state.aggregate.setZero();
    for (const auto &h : state.history)
      state.aggregate += h;
  }
  const double step = k < m ? static_cast<double>(m) * alpha /
                                  static_cast<double>(k + 1)
                            : alpha;
  Vector next = state.x - step * state.aggregate;
  state.prev_x = state.x;
  state.x = next;
  ++state.k;
  return next;
}

// ---------------------------------------------------------------------------

Trace run_loop(const LoopSpec &spec, TraceMeta meta) {
  if (spec.m == 0)
    throw ConfigError("run: component count must be positive");
  if (!spec.evaluate || !spec.step)
    throw ConfigError("run: loop needs evaluate and step callbacks");
  if (spec.limits.record_stride == 0)
    throw ConfigError("limits.record_stride must be positive");
  spec.schedule.validate();

  OrderingPolicy order(spec.ordering, spec.m, spec.seed);
  const bool locked =
      spec.schedule.cycle_locked.value_or(order.default_cycle_locked());
  StepsizeSequence steps(spec.schedule, locked);
  const std::uint64_t m = spec.m;
  const std::uint64_t eval_stride =
      spec.limits.eval_stride ? spec.limits.eval_stride : m;
  std::uint64_t max_iters = spec.limits.max_iters;
  if (spec.limits.max_cycles)
    max_iters = std::min(max_iters, *spec.limits.max_cycles * m);

  meta.ordering = to_string(spec.ordering);
  meta.seed = spec.seed;
  meta.schedule = spec.schedule.describe();
  meta.cycle_locked = locked;
  meta.m = spec.m;
  meta.dim = static_cast<std::size_t>(spec.x0.size());
  meta.eval_stride = eval_stride;

  Trace trace;
  trace.meta = std::move(meta);
  trace.best_value = std::numeric_limits<double>::infinity();
  trace.best_point = spec.x0;

  const auto t0 = std::chrono::steady_clock::now();
  auto wall = [&]() -> std::optional<double> {
    if (!spec.timing)
      return std::nullopt;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  Vector x = spec.x0;
  std::uint64_t k = 0;
  for (;;) {
    std::optional<double> fk;
    std::optional<double> dk;
    if (k % eval_stride == 0) {
      fk = spec.evaluate(x);
      if (*fk < trace.best_value) {
        trace.best_value = *fk;
        trace.best_point = x;
      }
      if (spec.dist_opt)
        dk = spec.dist_opt(x);
    }

    const bool target_hit =
        spec.limits.target_value &&
        trace.best_value <= *spec.limits.target_value + 1e-12;
    if (k >= max_iters || target_hit) {
      if (!fk) {
        fk = spec.evaluate(x);
        if (*fk < trace.best_value) {
          trace.best_value = *fk;
          trace.best_point = x;
        }
        if (spec.dist_opt)
          dk = spec.dist_opt(x);
      }
      trace.rows.push_back({k, std::nullopt, std::nullopt, fk, dk, wall()});
      trace.stop_reason =
          target_hit ? "target_value"
                     : (spec.limits.max_cycles &&
                                max_iters == *spec.limits.max_cycles * m &&
                                max_iters <= spec.limits.max_iters
                            ? "max_cycles"
                            : "max_iters");
      trace.final_value = fk;
      break;
    }

    const bool cycle_start = (k % m == 0);
    const std::size_t index = order.next_index(k);
    const double alpha = steps.next(k, cycle_start);
    if (fk || k % spec.limits.record_stride == 0)
      trace.rows.push_back({k, index, alpha, fk, dk, wall()});

    try {
      if (cycle_start && spec.on_cycle_start)
        spec.on_cycle_start(x);
      Vector next = spec.step(k, index - 1, alpha, x);
      if (!next.allFinite())
        throw ConvergenceError("iterate became non-finite at k=" +
                                   std::to_string(k),
                               std::numeric_limits<double>::infinity());
      x = std::move(next);
    } catch (const ConvergenceError &e) {
      trace.status = RunStatus::SolverFailure;
      trace.message = e.what();
      trace.stop_reason = "failure";
      trace.iterations = k;
      trace.final_point = x;
      return trace;
    }
    ++k;
  }
  trace.iterations = k;
  trace.final_point = x;
  return trace;
}

namespace {

void check_compatible(const Problem &problem, const RunConfig &config) {
  problem.validate();
  const bool whole = problem.constraint->is_whole_space();
  switch (config.variant) {
  case Variant::GradMomentum:
    if (!(config.momentum_beta >= 0.0 && config.momentum_beta < 1.0))
      throw ConfigError("algorithm.beta: momentum must lie in [0, 1)");
    if (!whole)
      throw ConfigError(
          "algorithm.variant: grad_momentum requires a whole-space constraint");
    break;
  case Variant::AggregatedGrad:
    if (!whole)
      throw ConfigError("algorithm.variant: aggregated_grad requires a "
                        "whole-space constraint");
    if (config.ordering != OrderingKind::Cyclic)
      throw ConfigError(
          "algorithm.ordering: aggregated_grad requires cyclic ordering");
    break;
  default:
    break;
  }
}

} // namespace

Trace run(const Problem &problem, const RunConfig &config) {
  check_compatible(problem, config);
  const Vector x0 =
      config.x0 ? *config.x0 : Vector::Zero(static_cast<Eigen::Index>(problem.dim));
  if (static_cast<std::size_t>(x0.size()) != problem.dim)
    throw ConfigError("x0: dimension " + std::to_string(x0.size()) +
                      " does not match problem dimension " +
                      std::to_string(problem.dim));
  if (!x0.allFinite())
    throw ConfigError("x0: coordinates must be finite");

  const ConstraintSet &X = *problem.constraint;
  const Tolerances tol = config.tol;
  const Variant variant = config.variant;
  const double beta = config.momentum_beta;

  OracleLog log;
  OracleLog *lp = config.instrument ? &log : nullptr;
  RunState state(x0, problem.size());

  LoopSpec spec;
  spec.m = problem.size();
  spec.x0 = x0;
  spec.evaluate = [&](const Vector &x) { return evaluate_total(problem, x); };
  if (problem.optimal_set)
    spec.dist_opt = [&](const Vector &x) -> std::optional<double> {
      return problem.optimal_set->distance(x);
    };
  if (lp)
    spec.on_cycle_start = [&](const Vector &x) {
      for (const auto &c : problem.components) {
        if (!c.prox_part->is_zero())
          lp->record(c.prox_part->subgradient(x));
        if (!c.subgrad_part->is_zero())
          lp->record(c.subgrad_part->subgradient(x));
      }
    };
  spec.step = [&](std::uint64_t k, std::size_t i, double alpha,
                  const Vector &x) -> Vector {
    const ComponentPair &comp = problem.components[i];
    StepResult r;
    switch (variant) {
    case Variant::ProxThenSubgrad:
      r = kernel_A(x, comp, X, &X, alpha, tol, lp);
      break;
    case Variant::UnconstrainedProxThenSubgrad:
      r = kernel_A(x, comp, X, nullptr, alpha, tol, lp);
      break;
    case Variant::SubgradThenProx:
      r = kernel_C(x, comp, X, alpha, tol, lp);
      break;
    case Variant::SubgradOnly: {
      const Vector g = subgradient_direction(comp, x);
      if (lp)
        lp->record(g);
      r.z = x;
      r.x_next = X.project(x - alpha * g);
      break;
    }
    case Variant::ProxOnly:
      r.x_next = kernel_prox_only(x, comp, X, alpha, tol);
      r.z = r.x_next;
      if (lp)
        lp->record((x - r.x_next) / alpha);
      break;
    case Variant::GradMomentum:
      state.x = x;
      r.x_next = step_momentum(state, comp, alpha, beta);
      r.z = x;
      if (lp)
        lp->record(component_gradient(comp, x));
      break;
    case Variant::AggregatedGrad:
      state.x = x;
      state.k = k;
      r.x_next = step_aggregated(state, comp, alpha);
      r.z = x;
      if (lp)
        lp->record(state.history.back());
      break;
    }
    if (config.observer)
      config.observer(StepRecord{k, i + 1, alpha, x, r.z, r.x_next});
    return std::move(r.x_next);
  };
  spec.ordering = config.ordering;
  spec.seed = config.seed;
  spec.schedule = config.schedule;
  spec.limits = config.limits;
  spec.timing = config.timing;

  TraceMeta meta;
  meta.variant = to_string(variant);
  meta.momentum_beta = beta;
  Trace trace = run_loop(spec, std::move(meta));
  trace.oracle_log = log;
  return trace;
}

} // namespace incrprox
