#include "incrprox/sets.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace incrprox {

namespace {

std::string fmt_vec(const Vector &v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

double squared_norm_checked(const Vector &a, const char *who) {
  const double sq = a.squaredNorm();
  if (!(sq > 0.0) || !std::isfinite(sq))
    throw ParameterError(std::string(who) + ": normal must be nonzero and finite");
  return sq;
}

} // namespace

Box::Box(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size())
    throw ConfigError("box: lower/upper dimension mismatch");
  for (Eigen::Index i = 0; i < lo_.size(); ++i)
    if (!(lo_[i] <= hi_[i]))
      throw ParameterError("box: lower bound exceeds upper bound");
}

Vector Box::project(const Vector &x) const {
  // Coordinates already inside are copied untouched.
  return x.cwiseMax(lo_).cwiseMin(hi_);
}

std::string Box::description() const {
  return "box(lo=" + fmt_vec(lo_) + ",hi=" + fmt_vec(hi_) + ")";
}

Ball::Ball(Vector center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius_ >= 0.0) || !std::isfinite(radius_))
    throw ParameterError("ball: radius must be finite and nonnegative");
}

Vector Ball::project(const Vector &x) const {
  const Vector d = x - center_;
  const double n = d.norm();
  if (n <= radius_)
    return x;
  // rounding can leave the scaled point just outside; nudge the factor down so
  // that projecting the result again returns it unchanged
  double s = radius_ / n;
  Vector p = center_ + s * d;
  while ((p - center_).norm() > radius_) {
    s = std::nextafter(s, 0.0);
    p = center_ + s * d;
  }
  return p;
}

Vector Ball::displacement(const Vector &x) const {
  const Vector d = x - center_;
  const double n = d.norm();
  if (n <= radius_)
    return Vector::Zero(x.size());
  return (1.0 - radius_ / n) * d;
}

std::string Ball::description() const {
  std::ostringstream os;
  os << "ball(center=" << fmt_vec(center_) << ",radius=" << radius_ << ")";
  return os.str();
}

Halfspace::Halfspace(Vector normal, double offset)
    : a_(std::move(normal)), b_(offset),
      a_sq_(squared_norm_checked(a_, "halfspace")) {}

Vector Halfspace::project(const Vector &x) const {
  const double viol = a_.dot(x) - b_;
  if (viol <= 0.0)
    return x;
  double t = viol / a_sq_;
  Vector p = x - t * a_;
  // keep the result inside as for the ball; the step doubles since one ulp of t
  // can be far below the rounding in a.x when |x| is large
  double step = std::nextafter(t, std::numeric_limits<double>::infinity()) - t;
  for (int k = 0; k < 200 && a_.dot(p) - b_ > 0.0; ++k) {
    t += step;
    step *= 2.0;
    p = x - t * a_;
  }
  return p;
}

Vector Halfspace::displacement(const Vector &x) const {
  const double viol = a_.dot(x) - b_;
  if (viol <= 0.0)
    return Vector::Zero(x.size());
  return (viol / a_sq_) * a_;
}

std::string Halfspace::description() const {
  std::ostringstream os;
  os << "halfspace(a=" << fmt_vec(a_) << ",b=" << b_ << ")";
  return os.str();
}

Hyperplane::Hyperplane(Vector normal, double offset)
    : a_(std::move(normal)), b_(offset),
      a_sq_(squared_norm_checked(a_, "hyperplane")) {}

Vector Hyperplane::project(const Vector &x) const {
  const double r = a_.dot(x) - b_;
  if (r == 0.0)
    return x;
  return x - (r / a_sq_) * a_;
}

Vector Hyperplane::displacement(const Vector &x) const {
  return ((a_.dot(x) - b_) / a_sq_) * a_;
}

std::string Hyperplane::description() const {
  std::ostringstream os;
  os << "hyperplane(a=" << fmt_vec(a_) << ",b=" << b_ << ")";
  return os.str();
}

Intersection::Intersection(std::vector<SetPtr> sets, std::size_t max_sweeps,
                           double tol)
    : sets_(std::move(sets)), max_sweeps_(max_sweeps), tol_(tol) {
  if (sets_.empty())
    throw ConfigError("intersection: needs at least one set");
  for (const auto &s : sets_)
    if (!s)
      throw ConfigError("intersection: null member set");
}

Vector Intersection::project(const Vector &x) const {
  if (sets_.size() == 1)
    return sets_.front()->project(x);
  bool inside = true;
  for (const auto &s : sets_)
    if (s->distance(x) > 0.0) {
      inside = false;
      break;
    }
  if (inside)
    return x;

  // Dykstra: y <- P_i(y + p_i), p_i <- (y + p_i) - P_i(y + p_i).
  std::vector<Vector> corr(sets_.size(), Vector::Zero(x.size()));
  Vector y = x;
  for (std::size_t sweep = 0; sweep < max_sweeps_; ++sweep) {
    double moved = 0.0;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      const Vector shifted = y + corr[i];
      Vector next = sets_[i]->project(shifted);
      corr[i] = shifted - next;
      moved = std::max(moved, (next - y).norm());
      y = std::move(next);
    }
    if (moved <= tol_)
      break;
  }
  return y;
}

std::string Intersection::description() const {
  std::string out = "intersection(";
  for (std::size_t i = 0; i < sets_.size(); ++i)
    out += (i ? ";" : "") + sets_[i]->description();
  return out + ")";
}

SetPtr make_whole_space() { return std::make_shared<WholeSpace>(); }
SetPtr make_box(Vector lo, Vector hi) {
  return std::make_shared<Box>(std::move(lo), std::move(hi));
}
SetPtr make_interval(double lo, double hi) {
  return make_box(Vector::Constant(1, lo), Vector::Constant(1, hi));
}
SetPtr make_ball(Vector center, double radius) {
  return std::make_shared<Ball>(std::move(center), radius);
}
SetPtr make_halfspace(Vector normal, double offset) {
  return std::make_shared<Halfspace>(std::move(normal), offset);
}
SetPtr make_hyperplane(Vector normal, double offset) {
  return std::make_shared<Hyperplane>(std::move(normal), offset);
}
SetPtr make_intersection(std::vector<SetPtr> sets) {
  return std::make_shared<Intersection>(std::move(sets));
}

} // namespace incrprox
