#include "incrprox/apps.hpp"

#include <algorithm>
#include <cmath>

#include "incrprox/functions.hpp"
#include "incrprox/prox.hpp"
#include "incrprox/schedule.hpp"
#include "incrprox/sets.hpp"

namespace incrprox {

std::string to_string(LassoSplit s) {
  return s == LassoSplit::PerComponentScaled ? "per_component_scaled"
                                             : "single_prox_copy";
}

LassoSplit lasso_split_from_string(const std::string &name) {
  if (name == "per_component_scaled")
    return LassoSplit::PerComponentScaled;
  if (name == "single_prox_copy")
    return LassoSplit::SingleProxCopy;
  throw ConfigError("problem.split: unknown split mode '" + name + "'");
}

void LassoInstance::validate() const {
  if (rows.empty())
    throw ConfigError("problem.rows: lasso needs at least one row");
  const auto n = rows.front().c.size();
  if (n == 0)
    throw ConfigError("problem.rows: empty row vector");
  for (const auto &r : rows) {
    if (r.c.size() != n)
      throw ConfigError("problem.rows: rows must share one dimension");
    if (!all_finite(r.c) || !std::isfinite(r.d))
      throw ConfigError("problem.rows: non-finite entry");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ConfigError("problem.gamma: must be nonnegative");
}

Problem lasso_problem(const LassoInstance &inst) {
  inst.validate();
  const std::size_t m = inst.rows.size();
  Problem p;
  p.dim = inst.dim();
  p.constraint = make_whole_space();
  for (std::size_t i = 0; i < m; ++i) {
    double share = 0.0;
    if (inst.split == LassoSplit::PerComponentScaled)
      share = inst.gamma / static_cast<double>(m);
    else if (i == 0)
      share = inst.gamma;
    FunctionPtr prox = share > 0.0 ? make_l1(share) : make_zero();
    p.components.push_back({prox,
                            make_rank1_quadratic(inst.rows[i].c, inst.rows[i].d),
                            "row_" + std::to_string(i + 1)});
  }
  return p;
}

Vector lasso_step(const Vector &x, const LassoRow &row, double gamma_share,
                  double alpha) {
  if (!(alpha > 0.0))
    throw ParameterError("lasso_step: alpha must be positive");
  if (gamma_share < 0.0)
    throw ParameterError("lasso_step: gamma_share must be nonnegative");
  const Vector z = gamma_share > 0.0 ? shrink(x, gamma_share, alpha) : x;
  // same association as the engine's alpha * h'(z), so streams match bitwise
  const Vector g = (row.c.dot(z) - row.d) * row.c;
  return z - alpha * g;
}

LassoInstance random_lasso(std::size_t m, std::size_t dim, double gamma,
                           std::uint64_t seed, std::size_t nonzeros,
                           double noise) {
  if (m == 0 || dim == 0)
    throw ConfigError("random_lasso: m and dim must be positive");
  SplitMix64 rng(seed);
  auto sym = [&rng](double r) { return r * (2.0 * rng.uniform() - 1.0); };
  Vector truth = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < std::min(nonzeros, dim); ++j)
    truth[static_cast<Eigen::Index>(j)] = sym(2.0);
  LassoInstance inst;
  inst.gamma = gamma;
  inst.rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector c(static_cast<Eigen::Index>(dim));
    for (Eigen::Index j = 0; j < c.size(); ++j)
      c[j] = sym(1.0);
    const double d = c.dot(truth) + sym(noise);
    inst.rows.push_back({std::move(c), d});
  }
  return inst;
}

void WeberInstance::validate() const {
  if (anchors.empty())
    throw ConfigError("problem.anchors: need at least one anchor");
  const auto n = anchors.front().y.size();
  if (n == 0)
    throw ConfigError("problem.anchors: empty anchor point");
  for (const auto &a : anchors) {
    if (a.y.size() != n)
      throw ConfigError("problem.anchors: anchors must share one dimension");
    if (!(a.w > 0.0) || !std::isfinite(a.w))
      throw ConfigError("problem.anchors: weights must be positive");
  }
}

Problem weber_problem(const WeberInstance &inst, WeberMode mode) {
  inst.validate();
  Problem p;
  p.dim = static_cast<std::size_t>(inst.anchors.front().y.size());
  p.constraint = make_whole_space();
  for (std::size_t i = 0; i < inst.anchors.size(); ++i) {
    auto term = make_weighted_norm(inst.anchors[i].y, inst.anchors[i].w);
    if (mode == WeberMode::Prox)
      p.components.push_back({term, make_zero(), "anchor_" + std::to_string(i + 1)});
    else
      p.components.push_back({make_zero(), term, "anchor_" + std::to_string(i + 1)});
  }
  const auto &a = inst.anchors;
  if (a.size() == 1) {
    p.optimal_value = 0.0;
    p.optimal_set = make_box(a[0].y, a[0].y);
  } else if (a.size() == 2 && a[0].w == a[1].w) {
    p.optimal_value = a[0].w * (a[0].y - a[1].y).norm();
  }
  return p;
}

Problem onedim_abs_benchmark(const std::vector<double> &b,
                             std::optional<std::pair<double, double>> interval,
                             AbsMode mode) {
  if (b.empty())
    throw ConfigError("problem.b: need at least one point");
  for (double v : b)
    if (!std::isfinite(v))
      throw ConfigError("problem.b: non-finite entry");
  if (interval && !(interval->first <= interval->second))
    throw ConfigError("problem.interval: lo must not exceed hi");

  Problem p;
  p.dim = 1;
  p.constraint = interval ? make_interval(interval->first, interval->second)
                          : make_whole_space();
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto term = make_abs_shift(b[i]);
    if (mode == AbsMode::Prox)
      p.components.push_back({term, make_zero(), "abs_" + std::to_string(i + 1)});
    else
      p.components.push_back({make_zero(), term, "abs_" + std::to_string(i + 1)});
  }

  std::vector<double> s = b;
  std::sort(s.begin(), s.end());
  const std::size_t m = s.size();
  double lo = s[(m - 1) / 2];
  double hi = s[m / 2];
  if (interval) {
    // the objective is monotone outside the median interval
    const double a = interval->first, c = interval->second;
    if (hi < a)
      lo = hi = a;
    else if (lo > c)
      lo = hi = c;
    else {
      lo = std::max(lo, a);
      hi = std::min(hi, c);
    }
  }
  p.optimal_set = make_interval(lo, hi);
  double fstar = 0.0;
  for (double v : b)
    fstar += std::abs(lo - v);
  p.optimal_value = fstar;
  return p;
}

} // namespace incrprox
