#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "incrprox/core.hpp"
#include "incrprox/schedule.hpp"

namespace incrprox {

/// Iteration variants. For component i_k = (f, h) and stepsize alpha:
///
///  ProxThenSubgrad           z = argmin_{X} f + |.-x|^2/2a,  x+ = P(z - a h'(z))
///  UnconstrainedProxThenSubgrad  as above with the prox over the whole space
///  SubgradThenProx           z = x - a h'(x),  x+ = argmin_{X} f + |.-z|^2/2a
///  SubgradOnly               x+ = P(x - a (f'(x) + h'(x)))
///  ProxOnly                  x+ = argmin_{X} (f + h) + |.-x|^2/2a
///  GradMomentum              x+ = x - a F_i'(x) + beta (x - x_prev), x_{-1} = x_0
///  AggregatedGrad            x+ = x - a * (sum of the last m component gradients)
enum class Variant {
  ProxThenSubgrad,
  UnconstrainedProxThenSubgrad,
  SubgradThenProx,
  SubgradOnly,
  ProxOnly,
  GradMomentum,
  AggregatedGrad,
};

std::string to_string(Variant v);
/// Throws ConfigError naming the unknown string.
Variant variant_from_string(const std::string &name);

struct StepResult {
  Vector z;
  Vector x_next;
};

/// Running maximum of oracle-output norms; the empirical bound constant.
struct OracleLog {
  double max_norm = 0.0;
  std::uint64_t count = 0;

  void record(double norm) {
    if (norm > max_norm)
      max_norm = norm;
    ++count;
  }
  void record(const Vector &v) { record(v.norm()); }
};

StepResult step_variant_A(const Vector &x, const ComponentPair &comp,
                          const ConstraintSet &X, double alpha,
                          const Tolerances &tol = {});
StepResult step_variant_B(const Vector &x, const ComponentPair &comp,
                          const ConstraintSet &X, double alpha,
                          const Tolerances &tol = {});
StepResult step_variant_C(const Vector &x, const ComponentPair &comp,
                          const ConstraintSet &X, double alpha,
                          const Tolerances &tol = {});
Vector step_subgradient(const Vector &x, const ComponentPair &comp,
                        const ConstraintSet &X, double alpha);
Vector step_prox(const Vector &x, const ComponentPair &comp,
                 const ConstraintSet &X, double alpha,
                 const Tolerances &tol = {});

/// Gradient of F_i = f_i + h_i through both subgradient oracles.
Vector component_gradient(const ComponentPair &comp, const Vector &x);

/// Mutable iterate state for the memory-carrying variants.
struct RunState {
  Vector x;
  Vector prev_x;
  std::uint64_t k = 0;
  std::size_t window = 1; // m
  std::deque<Vector> history;
  Vector aggregate;

  RunState(Vector x0, std::size_t m);
};

/// Heavy-ball incremental gradient step. Advances state (x, prev_x, k) and
/// returns the new iterate.
Vector step_momentum(RunState &state, const ComponentPair &comp, double alpha,
                     double beta);

/// Aggregated incremental gradient step: subtracts alpha times the sum of
/// the most recent min(k+1, m) component gradients. For k < m the stepsize
/// is inflated to m*alpha/(k+1).
Vector step_aggregated(RunState &state, const ComponentPair &comp,
                       double alpha);

// ---------------------------------------------------------------------------
// Run loop
// ---------------------------------------------------------------------------

struct Limits {
  std::uint64_t max_iters = 0;
  std::optional<std::uint64_t> max_cycles;
  std::optional<double> target_value;
  /// Evaluate F every this many iterations; 0 means once per cycle (m).
  std::uint64_t eval_stride = 0;
  /// Emit a trace row every this many iterations (rows with an evaluation
  /// are always emitted).
  std::uint64_t record_stride = 1;
};

/// Per-iteration data handed to an observer.
struct StepRecord {
  std::uint64_t k;
  std::size_t index; // 1-based
  double alpha;
  const Vector &x;
  const Vector &z;
  const Vector &x_next;
};

using StepObserver = std::function<void(const StepRecord &)>;

struct RunConfig {
  Variant variant = Variant::ProxThenSubgrad;
  double momentum_beta = 0.0;
  OrderingKind ordering = OrderingKind::Cyclic;
  std::uint64_t seed = 0;
  StepsizeSchedule schedule = StepsizeSchedule::constant(0.01);
  Limits limits;
  std::optional<Vector> x0; // zeros when absent
  Tolerances tol;
  /// Log oracle norms (plus all component subgradients at cycle starts)
  /// so that the bound constant c can be estimated from the run.
  bool instrument = true;
  /// Fill the wall_ms column. Off by default: timings break byte-identical
  /// traces.
  bool timing = false;
  StepObserver observer;
};

struct TraceRow {
  std::uint64_t k = 0;
  std::optional<std::size_t> index; // i_k, 1-based
  std::optional<double> alpha;      // alpha_k
  std::optional<double> value;      // F(x_k)
  std::optional<double> dist_opt;   // dist(x_k; X*)
  std::optional<double> wall_ms;
};

struct TraceMeta {
  std::string variant;
  double momentum_beta = 0.0;
  std::string ordering;
  std::uint64_t seed = 0;
  std::string schedule;
  bool cycle_locked = false;
  std::size_t m = 0;
  std::size_t dim = 0;
  std::uint64_t eval_stride = 0;
};

enum class RunStatus { Completed, SolverFailure };

struct Trace {
  TraceMeta meta;
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::Completed;
  std::string message;     // failure detail
  std::string stop_reason; // max_iters | max_cycles | target_value | failure
  std::uint64_t iterations = 0;
  double best_value = 0.0;
  Vector best_point;
  Vector final_point;
  std::optional<double> final_value;
  OracleLog oracle_log;
};

/// Generic incremental driver shared by the engine and the feasibility
/// solver: ordering, stepsizes, evaluation cadence, stopping, trace rows.
struct LoopSpec {
  std::size_t m = 0;
  Vector x0;
  std::function<double(const Vector &)> evaluate;
  std::function<std::optional<double>(const Vector &)> dist_opt;
  /// (k, 0-based index, alpha, x_k) -> x_{k+1}
  std::function<Vector(std::uint64_t, std::size_t, double, const Vector &)> step;
  /// Called at every cycle start (k % m == 0) before the step.
  std::function<void(const Vector &)> on_cycle_start;
  OrderingKind ordering = OrderingKind::Cyclic;
  std::uint64_t seed = 0;
  StepsizeSchedule schedule = StepsizeSchedule::constant(0.01);
  Limits limits;
  bool timing = false;
};

Trace run_loop(const LoopSpec &spec, TraceMeta meta);

/// Run `config.variant` on `problem` until a limit triggers. Limits are
/// OR-combined; target_value triggers on best_value <= target + 1e-12.
/// Solver failures inside a step end the run with status SolverFailure and
/// the partial trace.
///
/// Throws ConfigError when the variant is incompatible with the problem.
Trace run(const Problem &problem, const RunConfig &config);

} // namespace incrprox
