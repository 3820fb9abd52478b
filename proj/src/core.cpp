#include "incrprox/core.hpp"

#include <cmath>

#include "incrprox/prox.hpp"
#include "incrprox/sets.hpp"

namespace incrprox {

bool all_finite(const Vector &x) { return x.allFinite(); }

double ConstraintSet::distance(const Vector &x) const {
  return displacement(x).norm();
}

Vector ConvexFunction::prox(const Vector &center, double alpha,
                            const ConstraintSet *set,
                            const Tolerances &tol) const {
  if (!(alpha > 0.0))
    throw ParameterError("prox: alpha must be positive");
  const bool unconstrained = set == nullptr || set->is_whole_space();
  if (auto closed = prox_closed_form(center, alpha)) {
    if (unconstrained)
      return *closed;
    // A one-dimensional strictly convex objective restricted to an interval
    // is minimized at the clamp of its free minimizer; the same holds per
    // coordinate for separable functions over boxes.
    if (center.size() == 1 || (separable() && set->is_coordinatewise()))
      return set->project(*closed);
  }
  static const WholeSpace whole;
  return prox_numeric_fallback(*this, center, alpha,
                               unconstrained ? whole : *set, tol.oracle);
}

void Problem::validate() const {
  if (components.empty())
    throw ConfigError("problem.components: need at least one component");
  if (dim == 0)
    throw ConfigError("problem.dim: must be positive");
  if (!constraint)
    throw ConfigError("problem.constraint: missing");
  for (const auto &c : components)
    if (!c.prox_part || !c.subgrad_part)
      throw ConfigError("problem.components[" + c.label +
                        "]: both parts must be defined");
}

double evaluate_total(const Problem &problem, const Vector &x) {
  if (static_cast<std::size_t>(x.size()) != problem.dim)
    throw ConfigError("evaluate_total: point has dimension " +
                      std::to_string(x.size()) + ", problem expects " +
                      std::to_string(problem.dim));
  double total = 0.0;
  for (const auto &c : problem.components)
    total += c.value(x);
  return total;
}

bool check_subgradient(const ConvexFunction &fn, const Vector &x,
                       std::span<const Vector> samples, double tol,
                       const std::optional<Vector> &claimed) {
  if (samples.empty())
    return true;
  const Vector g = claimed ? *claimed : fn.subgradient(x);
  const double fx = fn.value(x);
  for (const auto &y : samples) {
    if (fn.value(y) < fx + g.dot(y - x) - tol)
      return false;
  }
  return true;
}

} // namespace incrprox
