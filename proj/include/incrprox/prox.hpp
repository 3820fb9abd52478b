#pragma once

#include <cstddef>

#include "incrprox/core.hpp"

namespace incrprox {

/// Coordinatewise soft-thresholding at level gamma*alpha: the prox of
/// gamma*||.||_1. Coordinates with |x_j| == gamma*alpha map to zero.
Vector shrink(const Vector &x, double gamma, double alpha);

/// Prox of (1/2)(<c, z> - d)^2:  x - alpha c (c'x - d) / (1 + alpha ||c||^2).
Vector prox_rank1_quadratic(const Vector &x, const Vector &c, double d,
                            double alpha);

/// Prox of w*||z - center||: block soft-threshold toward `center`.
Vector prox_weighted_norm(const Vector &x, const Vector &center, double w,
                          double alpha);

/// Below this distance a point counts as inside the set for interpolated
/// projection.
inline constexpr double kInsideDistance = 1e-14;

/// Prox of gamma*dist(.; set): move from x toward its projection by
/// alpha*gamma, or all the way when that overshoots.
Vector interpolated_projection(const Vector &x, const ConstraintSet &set,
                               double gamma, double alpha);

/// Step cap of the numeric prox solver.
inline constexpr std::size_t kFallbackMaxSteps = 100000;

/// argmin_{z in set} fn(z) + ||z - center||^2/(2 alpha) using only fn's
/// value/subgradient oracles.
///
/// The inner objective is (1/alpha)-strongly convex. It is minimized by a
/// central-cut ellipsoid method (bisection in one dimension) started from a
/// ball of radius alpha*||g(P(center))|| around P(center), which provably
/// contains the minimizer. The returned point is certified to lie within
/// `tol` of the true prox point: the ellipsoid always contains the
/// minimizer, and the solver stops once its largest semi-axis is <= tol.
///
/// Throws ConvergenceError (carrying the final certified radius) when
/// `max_steps` is exhausted.
Vector prox_numeric_fallback(const ConvexFunction &fn, const Vector &center,
                             double alpha, const ConstraintSet &set,
                             double tol,
                             std::size_t max_steps = kFallbackMaxSteps);

} // namespace incrprox
