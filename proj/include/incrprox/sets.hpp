#pragma once

#include <vector>

#include "incrprox/core.hpp"

namespace incrprox {

class WholeSpace final : public ConstraintSet {
public:
  Vector project(const Vector &x) const override { return x; }
  Vector displacement(const Vector &x) const override {
    return Vector::Zero(x.size());
  }
  double distance(const Vector &) const override { return 0.0; }
  std::string description() const override { return "whole_space"; }
  bool is_whole_space() const override { return true; }
  bool is_coordinatewise() const override { return true; }
};

/// { x : lo <= x <= hi } coordinatewise. Infinite bounds are allowed.
class Box final : public ConstraintSet {
public:
  Box(Vector lo, Vector hi);

  Vector project(const Vector &x) const override;
  std::string description() const override;
  bool is_coordinatewise() const override { return true; }

  const Vector &lower() const { return lo_; }
  const Vector &upper() const { return hi_; }

private:
  Vector lo_, hi_;
};

/// { x : ||x - center|| <= radius }
class Ball final : public ConstraintSet {
public:
  Ball(Vector center, double radius);

  Vector project(const Vector &x) const override;
  Vector displacement(const Vector &x) const override;
  std::string description() const override;

  const Vector &center() const { return center_; }
  double radius() const { return radius_; }

private:
  Vector center_;
  double radius_;
};

/// { x : <a, x> <= b }
class Halfspace final : public ConstraintSet {
public:
  Halfspace(Vector normal, double offset);

  Vector project(const Vector &x) const override;
  Vector displacement(const Vector &x) const override;
  std::string description() const override;

  const Vector &normal() const { return a_; }
  double offset() const { return b_; }

private:
  Vector a_;
  double b_;
  double a_sq_;
};

/// { x : <a, x> = b }
class Hyperplane final : public ConstraintSet {
public:
  Hyperplane(Vector normal, double offset);

  Vector project(const Vector &x) const override;
  Vector displacement(const Vector &x) const override;
  std::string description() const override;

  const Vector &normal() const { return a_; }
  double offset() const { return b_; }

private:
  Vector a_;
  double b_;
  double a_sq_;
};

/// Intersection of convex sets. Projection runs Dykstra's alternating
/// scheme (cyclic projections with correction terms), capped at
/// `max_sweeps`; it is iterative and therefore approximate to `tol`.
class Intersection final : public ConstraintSet {
public:
  explicit Intersection(std::vector<SetPtr> sets, std::size_t max_sweeps = 10000,
                        double tol = 1e-10);

  Vector project(const Vector &x) const override;
  std::string description() const override;

  const std::vector<SetPtr> &sets() const { return sets_; }

private:
  std::vector<SetPtr> sets_;
  std::size_t max_sweeps_;
  double tol_;
};

SetPtr make_whole_space();
SetPtr make_box(Vector lo, Vector hi);
SetPtr make_interval(double lo, double hi);
SetPtr make_ball(Vector center, double radius);
SetPtr make_halfspace(Vector normal, double offset);
SetPtr make_hyperplane(Vector normal, double offset);
SetPtr make_intersection(std::vector<SetPtr> sets);

} // namespace incrprox
