#include "incrprox/functions.hpp"

#include <cmath>
#include <sstream>

#include "incrprox/prox.hpp"

namespace incrprox {

namespace {

void require_finite_nonneg(double v, const char *what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw ParameterError(std::string(what) + " must be finite and nonnegative");
}

void require_finite_pos(double v, const char *what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParameterError(std::string(what) + " must be finite and positive");
}

} // namespace

// --- L1Norm ---------------------------------------------------------------

L1Norm::L1Norm(double gamma) : gamma_(gamma) {
  require_finite_nonneg(gamma, "l1: gamma");
}

double L1Norm::value(const Vector &x) const {
  return gamma_ * x.lpNorm<1>();
}

Vector L1Norm::subgradient(const Vector &x) const {
  Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j)
    g[j] = x[j] > 0.0 ? gamma_ : (x[j] < 0.0 ? -gamma_ : 0.0);
  return g;
}

std::optional<Vector> L1Norm::prox_closed_form(const Vector &center,
                                               double alpha) const {
  if (gamma_ == 0.0)
    return center;
  return shrink(center, gamma_, alpha);
}

std::string L1Norm::description() const {
  std::ostringstream os;
  os << "l1(gamma=" << gamma_ << ")";
  return os.str();
}

// --- Rank1Quadratic ---------------------------------------------------------

Rank1Quadratic::Rank1Quadratic(Vector c, double d) : c_(std::move(c)), d_(d) {}

double Rank1Quadratic::value(const Vector &x) const {
  const double r = c_.dot(x) - d_;
  return 0.5 * r * r;
}

Vector Rank1Quadratic::subgradient(const Vector &x) const {
  return (c_.dot(x) - d_) * c_;
}

std::optional<Vector> Rank1Quadratic::prox_closed_form(const Vector &center,
                                                       double alpha) const {
  return prox_rank1_quadratic(center, c_, d_, alpha);
}

std::string Rank1Quadratic::description() const {
  std::ostringstream os;
  os << "rank1_quadratic(n=" << c_.size() << ",d=" << d_ << ")";
  return os.str();
}

// --- WeightedNorm -----------------------------------------------------------

WeightedNorm::WeightedNorm(Vector center, double weight)
    : center_(std::move(center)), w_(weight) {
  require_finite_pos(weight, "weighted_norm: weight");
}

double WeightedNorm::value(const Vector &x) const {
  return w_ * (x - center_).norm();
}

Vector WeightedNorm::subgradient(const Vector &x) const {
  const Vector d = x - center_;
  const double n = d.norm();
  if (n == 0.0)
    return Vector::Zero(x.size());
  return (w_ / n) * d;
}

std::optional<Vector> WeightedNorm::prox_closed_form(const Vector &center,
                                                     double alpha) const {
  return prox_weighted_norm(center, center_, w_, alpha);
}

std::string WeightedNorm::description() const {
  std::ostringstream os;
  os << "weighted_norm(w=" << w_ << ")";
  return os.str();
}

// --- SquaredDistance --------------------------------------------------------

SquaredDistance::SquaredDistance(Vector center, double weight)
    : center_(std::move(center)), w_(weight) {
  require_finite_nonneg(weight, "squared_distance: weight");
}

double SquaredDistance::value(const Vector &x) const {
  return 0.5 * w_ * (x - center_).squaredNorm();
}

Vector SquaredDistance::subgradient(const Vector &x) const {
  return w_ * (x - center_);
}

std::optional<Vector> SquaredDistance::prox_closed_form(const Vector &center,
                                                        double alpha) const {
  return (center + (alpha * w_) * center_) / (1.0 + alpha * w_);
}

std::string SquaredDistance::description() const {
  std::ostringstream os;
  os << "squared_distance(w=" << w_ << ")";
  return os.str();
}

// --- Affine -----------------------------------------------------------------

Affine::Affine(Vector a, double b) : a_(std::move(a)), b_(b) {}

double Affine::value(const Vector &x) const { return a_.dot(x) + b_; }

Vector Affine::subgradient(const Vector &) const { return a_; }

std::optional<Vector> Affine::prox_closed_form(const Vector &center,
                                               double alpha) const {
  return center - alpha * a_;
}

bool Affine::is_zero() const { return b_ == 0.0 && a_.isZero(0.0); }

std::string Affine::description() const {
  std::ostringstream os;
  os << "affine(b=" << b_ << ")";
  return os.str();
}

// --- DistanceFunction -------------------------------------------------------

DistanceFunction::DistanceFunction(SetPtr set, double gamma)
    : set_(std::move(set)), gamma_(gamma) {
  if (!set_)
    throw ConfigError("distance: null set");
  require_finite_pos(gamma, "distance: gamma");
}

double DistanceFunction::value(const Vector &x) const {
  return gamma_ * set_->distance(x);
}

Vector DistanceFunction::subgradient(const Vector &x) const {
  const Vector d = set_->displacement(x);
  const double n = d.norm();
  if (n == 0.0)
    return Vector::Zero(x.size());
  return (gamma_ / n) * d;
}

std::optional<Vector> DistanceFunction::prox_closed_form(const Vector &center,
                                                         double alpha) const {
  return interpolated_projection(center, *set_, gamma_, alpha);
}

std::string DistanceFunction::description() const {
  std::ostringstream os;
  os << "distance(gamma=" << gamma_ << "," << set_->description() << ")";
  return os.str();
}

// --- MaxPenalty -------------------------------------------------------------

MaxPenalty::MaxPenalty(FunctionPtr g, double c) : g_(std::move(g)), c_(c) {
  if (!g_)
    throw ConfigError("max_penalty: null constraint function");
  require_finite_pos(c, "max_penalty: c");
}

double MaxPenalty::value(const Vector &x) const {
  return c_ * std::max(0.0, g_->value(x));
}

Vector MaxPenalty::subgradient(const Vector &x) const {
  if (g_->value(x) > 0.0)
    return c_ * g_->subgradient(x);
  return Vector::Zero(x.size());
}

std::string MaxPenalty::description() const {
  std::ostringstream os;
  os << "max_penalty(c=" << c_ << "," << g_->description() << ")";
  return os.str();
}

// --- Scaled -----------------------------------------------------------------

Scaled::Scaled(FunctionPtr fn, double scale) : fn_(std::move(fn)), s_(scale) {
  if (!fn_)
    throw ConfigError("scaled: null function");
  require_finite_pos(scale, "scaled: scale");
}

double Scaled::value(const Vector &x) const { return s_ * fn_->value(x); }

Vector Scaled::subgradient(const Vector &x) const {
  return s_ * fn_->subgradient(x);
}

std::optional<Vector> Scaled::prox_closed_form(const Vector &center,
                                               double alpha) const {
  return fn_->prox_closed_form(center, s_ * alpha);
}

std::string Scaled::description() const {
  std::ostringstream os;
  os << s_ << "*" << fn_->description();
  return os.str();
}

// --- SumFunction ------------------------------------------------------------

SumFunction::SumFunction(std::vector<FunctionPtr> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty())
    throw ConfigError("sum: needs at least one term");
  for (const auto &t : terms_)
    if (!t)
      throw ConfigError("sum: null term");
}

double SumFunction::value(const Vector &x) const {
  double v = 0.0;
  for (const auto &t : terms_)
    v += t->value(x);
  return v;
}

Vector SumFunction::subgradient(const Vector &x) const {
  Vector g = Vector::Zero(x.size());
  for (const auto &t : terms_)
    g += t->subgradient(x);
  return g;
}

std::optional<Vector> SumFunction::prox_closed_form(const Vector &center,
                                                    double alpha) const {
  // Zero terms drop out; a single live term keeps its closed form.
  const ConvexFunction *live = nullptr;
  for (const auto &t : terms_) {
    if (t->is_zero())
      continue;
    if (live)
      return std::nullopt;
    live = t.get();
  }
  if (!live)
    return center;
  return live->prox_closed_form(center, alpha);
}

bool SumFunction::is_zero() const {
  for (const auto &t : terms_)
    if (!t->is_zero())
      return false;
  return true;
}

std::string SumFunction::description() const {
  std::string out = "sum(";
  for (std::size_t i = 0; i < terms_.size(); ++i)
    out += (i ? "+" : "") + terms_[i]->description();
  return out + ")";
}

// --- factories --------------------------------------------------------------

FunctionPtr make_zero() { return std::make_shared<ZeroFunction>(); }
FunctionPtr make_l1(double gamma) { return std::make_shared<L1Norm>(gamma); }
FunctionPtr make_rank1_quadratic(Vector c, double d) {
  return std::make_shared<Rank1Quadratic>(std::move(c), d);
}
FunctionPtr make_weighted_norm(Vector center, double weight) {
  return std::make_shared<WeightedNorm>(std::move(center), weight);
}
FunctionPtr make_abs_shift(double b) {
  return make_weighted_norm(Vector::Constant(1, b), 1.0);
}
FunctionPtr make_squared_distance(Vector center, double weight) {
  return std::make_shared<SquaredDistance>(std::move(center), weight);
}
FunctionPtr make_affine(Vector a, double b) {
  return std::make_shared<Affine>(std::move(a), b);
}
FunctionPtr make_distance(SetPtr set, double gamma) {
  return std::make_shared<DistanceFunction>(std::move(set), gamma);
}
FunctionPtr make_max_penalty(FunctionPtr g, double c) {
  return std::make_shared<MaxPenalty>(std::move(g), c);
}
FunctionPtr make_scaled(FunctionPtr fn, double scale) {
  return std::make_shared<Scaled>(std::move(fn), scale);
}
FunctionPtr make_sum(std::vector<FunctionPtr> terms) {
  return std::make_shared<SumFunction>(std::move(terms));
}

} // namespace incrprox
