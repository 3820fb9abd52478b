#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incrprox/error.hpp"

namespace incrprox {

/// Dense iterate. Coordinates must stay finite.
using Vector = Eigen::VectorXd;

/// Every numeric tolerance used by the oracles. Passed explicitly, never
/// global.
struct Tolerances {
  double oracle = 1e-8;       // inner prox solves, numeric cross-checks
  double projection = 1e-10;  // iterative projections (intersections)
  double subgradient = 1e-9;  // slack in the subgradient inequality
};

bool all_finite(const Vector &x);

// ---------------------------------------------------------------------------
// Constraint sets
// ---------------------------------------------------------------------------

/// Closed convex set with a Euclidean projection oracle.
///
/// Implementations must return the input unchanged (bitwise) when it already
/// lies in the set, so that projecting a feasible iterate is an exact no-op.
class ConstraintSet {
public:
  virtual ~ConstraintSet() = default;

  virtual Vector project(const Vector &x) const = 0;

  /// x - project(x). Sets with a closed form override this: forming the
  /// difference explicitly cancels badly right next to the boundary.
  virtual Vector displacement(const Vector &x) const { return x - project(x); }

  /// Euclidean distance to the set, ||x - project(x)||.
  virtual double distance(const Vector &x) const;

  bool contains(const Vector &x, double tol = 0.0) const {
    return distance(x) <= tol;
  }

  virtual std::string description() const = 0;

  virtual bool is_whole_space() const { return false; }

  /// True when projection acts coordinate by coordinate (boxes).
  virtual bool is_coordinatewise() const { return false; }
};

using SetPtr = std::shared_ptr<const ConstraintSet>;

// ---------------------------------------------------------------------------
// Convex functions
// ---------------------------------------------------------------------------

/// Real-valued convex function with a subgradient oracle and a proximal
/// oracle. Concrete functions override `prox_closed_form` when one exists;
/// otherwise `prox` falls back to a certified numeric inner solve.
class ConvexFunction {
public:
  virtual ~ConvexFunction() = default;

  virtual double value(const Vector &x) const = 0;

  /// One element of the subdifferential at x. Kink tie-breaks are
  /// deterministic (zero where zero is admissible).
  virtual Vector subgradient(const Vector &x) const = 0;

  /// argmin_{z in set} value(z) + ||z - center||^2 / (2 alpha). A null set
  /// means the whole space.
  Vector prox(const Vector &center, double alpha, const ConstraintSet *set,
              const Tolerances &tol = {}) const;

  /// Unconstrained closed-form prox, if this function has one.
  virtual std::optional<Vector> prox_closed_form(const Vector &center,
                                                 double alpha) const {
    (void)center;
    (void)alpha;
    return std::nullopt;
  }

  /// Separable across coordinates: a box-constrained prox is then the
  /// clamped unconstrained prox.
  virtual bool separable() const { return false; }

  /// Identically zero. Lets the engine skip no-op oracle calls while keeping
  /// reductions bitwise exact.
  virtual bool is_zero() const { return false; }

  virtual std::string description() const = 0;
};

using FunctionPtr = std::shared_ptr<const ConvexFunction>;

// Spec-facing aliases: the same object plays both roles.
using ProxCapableFunction = ConvexFunction;
using SubgradientFunction = ConvexFunction;

/// One additive term F_i = f_i + h_i. `prox_part` is handled by proximal
/// steps, `subgrad_part` by subgradient steps.
struct ComponentPair {
  FunctionPtr prox_part;
  FunctionPtr subgrad_part;
  std::string label;

  double value(const Vector &x) const {
    return prox_part->value(x) + subgrad_part->value(x);
  }
};

/// minimize sum_i (f_i(x) + h_i(x)) subject to x in `constraint`.
struct Problem {
  std::size_t dim = 0;
  std::vector<ComponentPair> components;
  SetPtr constraint;
  std::optional<double> optimal_value;  // F*, diagnostics only
  SetPtr optimal_set;                   // X*, diagnostics only (may be null)

  std::size_t size() const { return components.size(); }

  /// Throws ConfigError on m == 0, null parts, or a missing constraint.
  void validate() const;
};

/// F(x) = sum over all components. Throws ConfigError on dimension mismatch.
double evaluate_total(const Problem &problem, const Vector &x);

/// True iff fn(y) >= fn(x) + <g, y - x> - tol for every sample y, where g is
/// `claimed` (or fn.subgradient(x) when absent).
bool check_subgradient(const ConvexFunction &fn, const Vector &x,
                       std::span<const Vector> samples, double tol,
                       const std::optional<Vector> &claimed = std::nullopt);

} // namespace incrprox
