#include "incrprox/prox.hpp"

#include <cmath>
#include <string>

namespace incrprox {

namespace {

void require_positive(double v, const char *what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParameterError(std::string(what) + " must be positive and finite");
}

Vector inner_subgradient(const ConvexFunction &fn, const Vector &z,
                         const Vector &center, double alpha) {
  return fn.subgradient(z) + (z - center) / alpha;
}

Vector bisect_1d(const ConvexFunction &fn, const Vector &center, double alpha,
                 const ConstraintSet &set, const Vector &start, double radius,
                 double tol, std::size_t max_steps) {
  double lo = start[0] - radius;
  double hi = start[0] + radius;
  Vector mid(1);
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (hi - lo <= 2.0 * tol) {
      mid[0] = 0.5 * (lo + hi);
      return set.project(mid);
    }
    mid[0] = 0.5 * (lo + hi);
    const Vector p = set.project(mid);
    double slope;
    if (p[0] != mid[0])
      slope = mid[0] - p[0]; // the set lies on the side of p
    else
      slope = inner_subgradient(fn, mid, center, alpha)[0];
    if (slope > 0.0)
      hi = mid[0];
    else if (slope < 0.0)
      lo = mid[0];
    else
      return mid;
  }
  throw ConvergenceError("prox_numeric_fallback: bisection step cap reached",
                         0.5 * (hi - lo));
}

} // namespace

Vector shrink(const Vector &x, double gamma, double alpha) {
  require_positive(gamma, "shrink: gamma");
  require_positive(alpha, "shrink: alpha");
  const double t = gamma * alpha;
  Vector z(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double v = x[j];
    if (v > t)
      z[j] = v - t;
    else if (v < -t)
      z[j] = v + t;
    else
      z[j] = 0.0;
  }
  return z;
}

Vector prox_rank1_quadratic(const Vector &x, const Vector &c, double d,
                            double alpha) {
  require_positive(alpha, "prox_rank1_quadratic: alpha");
  const double residual = c.dot(x) - d;
  const double scale = alpha * residual / (1.0 + alpha * c.squaredNorm());
  return x - scale * c;
}

Vector prox_weighted_norm(const Vector &x, const Vector &center, double w,
                          double alpha) {
  require_positive(w, "prox_weighted_norm: w");
  require_positive(alpha, "prox_weighted_norm: alpha");
  const Vector d = x - center;
  const double n = d.norm();
  const double t = alpha * w;
  if (n <= t)
    return center;
  return center + (1.0 - t / n) * d;
}

Vector interpolated_projection(const Vector &x, const ConstraintSet &set,
                               double gamma, double alpha) {
  require_positive(gamma, "interpolated_projection: gamma");
  require_positive(alpha, "interpolated_projection: alpha");
  const Vector p = set.project(x);
  const double dist = (x - p).norm();
  if (dist < kInsideDistance)
    return x;
  const double beta = alpha * gamma / dist;
  if (beta < 1.0)
    return (1.0 - beta) * x + beta * p;
  return p;
}

Vector prox_numeric_fallback(const ConvexFunction &fn, const Vector &center,
                             double alpha, const ConstraintSet &set, double tol,
                             std::size_t max_steps) {
  require_positive(alpha, "prox_numeric_fallback: alpha");
  require_positive(tol, "prox_numeric_fallback: tol");
  const Vector start = set.project(center);
  if (fn.is_zero())
    return start;

  // Strong convexity with modulus 1/alpha bounds ||start - z*|| by
  // alpha * ||g(start)|| for any inner subgradient g at the feasible start.
  const Vector g0 = inner_subgradient(fn, start, center, alpha);
  const double radius = alpha * g0.norm() * (1.0 + 1e-9) + 1e-300;
  if (g0.squaredNorm() == 0.0)
    return start;

  const Eigen::Index n = center.size();
  if (n == 1)
    return bisect_1d(fn, center, alpha, set, start, radius, tol, max_steps);

  // Shor's factored form: the ellipsoid is {x + B u : |u| <= 1}. Updating
  // B instead of B B' keeps the shape positive definite in floating point.
  const double nd = static_cast<double>(n);
  const double expand = nd / std::sqrt(nd * nd - 1.0);
  const double squeeze = 1.0 - std::sqrt((nd - 1.0) / (nd + 1.0));
  Vector x = start;
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n) * radius;
  const double tol_sq = tol * tol;

  for (std::size_t step = 0; step < max_steps; ++step) {
    // every semi-axis is at most the Frobenius norm of B
    if (B.squaredNorm() <= tol_sq)
      return set.project(x);

    Vector a = set.displacement(x);
    if (a.squaredNorm() > 0.0) {
      // feasibility cut
    } else {
      a = inner_subgradient(fn, x, center, alpha);
      if (a.squaredNorm() == 0.0)
        return x;
    }
    Vector u = B.transpose() * a;
    const double un = u.norm();
    if (!(un > 0.0))
      return set.project(x);
    u /= un;
    const Vector Bu = B * u;
    x -= Bu / (nd + 1.0);
    B = expand * (B - squeeze * Bu * u.transpose());
  }
  throw ConvergenceError("prox_numeric_fallback: ellipsoid step cap reached",
                         B.norm());
}

} // namespace incrprox
