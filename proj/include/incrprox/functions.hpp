#pragma once

#include <vector>

#include "incrprox/core.hpp"

namespace incrprox {

/// The constant-zero function.
class ZeroFunction final : public ConvexFunction {
public:
  double value(const Vector &) const override { return 0.0; }
  Vector subgradient(const Vector &x) const override {
    return Vector::Zero(x.size());
  }
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double) const override {
    return center;
  }
  bool separable() const override { return true; }
  bool is_zero() const override { return true; }
  std::string description() const override { return "zero"; }
};

/// gamma * ||x||_1, gamma >= 0. Subgradient at x_j = 0 is 0.
class L1Norm final : public ConvexFunction {
public:
  explicit L1Norm(double gamma);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  bool separable() const override { return true; }
  bool is_zero() const override { return gamma_ == 0.0; }
  std::string description() const override;

  double gamma() const { return gamma_; }

private:
  double gamma_;
};

/// (1/2) (<c, x> - d)^2 : one least-squares data term.
class Rank1Quadratic final : public ConvexFunction {
public:
  Rank1Quadratic(Vector c, double d);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  std::string description() const override;

  const Vector &row() const { return c_; }
  double target() const { return d_; }

private:
  Vector c_;
  double d_;
};

/// w * ||x - center||. Subgradient at the center is the zero vector.
class WeightedNorm final : public ConvexFunction {
public:
  WeightedNorm(Vector center, double weight);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  std::string description() const override;

  const Vector &center() const { return center_; }
  double weight() const { return w_; }

private:
  Vector center_;
  double w_;
};

/// (weight/2) * ||x - center||^2.
class SquaredDistance final : public ConvexFunction {
public:
  SquaredDistance(Vector center, double weight);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  bool separable() const override { return true; }
  std::string description() const override;

private:
  Vector center_;
  double w_;
};

/// <a, x> + b.
class Affine final : public ConvexFunction {
public:
  Affine(Vector a, double b);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  bool separable() const override { return true; }
  bool is_zero() const override;
  std::string description() const override;

  const Vector &slope() const { return a_; }
  double offset() const { return b_; }

private:
  Vector a_;
  double b_;
};

/// gamma * dist(x; set). Prox is the interpolated projection; subgradient
/// is gamma (x - P(x)) / dist, and zero on the set.
class DistanceFunction final : public ConvexFunction {
public:
  DistanceFunction(SetPtr set, double gamma);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  std::string description() const override;

  const ConstraintSet &set() const { return *set_; }
  const SetPtr &set_ptr() const { return set_; }
  double gamma() const { return gamma_; }

private:
  SetPtr set_;
  double gamma_;
};

/// c * max{0, g(x)} for convex g. Subgradient: c * g'(x) where g > 0, zero
/// otherwise (including the boundary g = 0).
class MaxPenalty final : public ConvexFunction {
public:
  MaxPenalty(FunctionPtr g, double c);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::string description() const override;

private:
  FunctionPtr g_;
  double c_;
};

/// s * fn(x), s > 0. prox(center, alpha) = fn.prox(center, s*alpha).
class Scaled final : public ConvexFunction {
public:
  Scaled(FunctionPtr fn, double scale);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  bool separable() const override { return fn_->separable(); }
  bool is_zero() const override { return fn_->is_zero(); }
  std::string description() const override;

private:
  FunctionPtr fn_;
  double s_;
};

/// Pointwise sum. No closed-form prox; proximal steps use the numeric solver.
class SumFunction final : public ConvexFunction {
public:
  explicit SumFunction(std::vector<FunctionPtr> terms);

  double value(const Vector &x) const override;
  Vector subgradient(const Vector &x) const override;
  std::optional<Vector> prox_closed_form(const Vector &center,
                                         double alpha) const override;
  bool is_zero() const override;
  std::string description() const override;

private:
  std::vector<FunctionPtr> terms_;
};

FunctionPtr make_zero();
FunctionPtr make_l1(double gamma);
FunctionPtr make_rank1_quadratic(Vector c, double d);
FunctionPtr make_weighted_norm(Vector center, double weight);
/// |x - b| in one dimension.
FunctionPtr make_abs_shift(double b);
FunctionPtr make_squared_distance(Vector center, double weight);
FunctionPtr make_affine(Vector a, double b);
FunctionPtr make_distance(SetPtr set, double gamma);
FunctionPtr make_max_penalty(FunctionPtr g, double c);
FunctionPtr make_scaled(FunctionPtr fn, double scale);
FunctionPtr make_sum(std::vector<FunctionPtr> terms);

} // namespace incrprox
