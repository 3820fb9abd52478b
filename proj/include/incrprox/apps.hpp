#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "incrprox/core.hpp"

namespace incrprox {

enum class LassoSplit {
  PerComponentScaled, // (gamma/m)|x|_1 on every component
  SingleProxCopy,     // gamma|x|_1 on the first component only
};

std::string to_string(LassoSplit s);
LassoSplit lasso_split_from_string(const std::string &name);

struct LassoRow {
  Vector c;
  double d = 0.0;
};

/// gamma |x|_1 + 1/2 sum_i (c_i'x - d_i)^2
struct LassoInstance {
  std::vector<LassoRow> rows;
  double gamma = 0.0;
  LassoSplit split = LassoSplit::PerComponentScaled;

  std::size_t dim() const { return rows.empty() ? 0 : rows.front().c.size(); }
  void validate() const;
};

/// One component per row: prox part is the l1 share, subgradient part the
/// rank-one quadratic. Whole-space constraint.
Problem lasso_problem(const LassoInstance &inst);

/// z = shrink(x, gamma_share, alpha), x+ = z - alpha c (c'z - d).
/// gamma_share = 0 skips the shrink.
Vector lasso_step(const Vector &x, const LassoRow &row, double gamma_share,
                  double alpha);

/// Rows with entries uniform in [-1, 1]; d_i = c_i'x_true + noise, where
/// x_true has `nonzeros` leading entries uniform in [-2, 2].
LassoInstance random_lasso(std::size_t m, std::size_t dim, double gamma,
                           std::uint64_t seed, std::size_t nonzeros = 0,
                           double noise = 0.1);

struct WeberAnchor {
  Vector y;
  double w = 1.0;
};

struct WeberInstance {
  std::vector<WeberAnchor> anchors;
  void validate() const;
};

enum class WeberMode { Prox, Subgradient };

/// Components w_i |x - y_i|, placed in the prox part or in the subgradient
/// part. F* is filled for one anchor (0) and two anchors of equal weight.
Problem weber_problem(const WeberInstance &inst, WeberMode mode);

enum class AbsMode { Prox, Subgradient };

/// F(x) = sum_i |x - b_i| in one dimension, optionally over [lo, hi].
/// X* is the median interval (clipped to [lo, hi] when constrained) and F*
/// is evaluated there. With the default subgradient placement c = 1.
Problem onedim_abs_benchmark(const std::vector<double> &b,
                             std::optional<std::pair<double, double>> interval =
                                 std::nullopt,
                             AbsMode mode = AbsMode::Subgradient);

} // namespace incrprox
