#pragma once

#include <cstdint>
#include <optional>

#include "incrprox/engine.hpp"

namespace incrprox {

/// Inputs to the constant-stepsize error bounds and iteration estimates.
struct BoundInputs {
  double alpha = 0.0;   // constant stepsize
  std::size_t m = 1;    // number of components
  double c = 0.0;       // bound on subgradient norms
  double dist0 = 0.0;   // dist(x_0; X*)
  double epsilon = 0.0; // target accuracy for the iteration estimates

  /// Throws ParameterError unless alpha, m, c, epsilon > 0 and dist0 >= 0.
  void validate() const;
};

/// beta = 1/m + 4, the per-cycle constant of the cyclic analysis.
double cyclic_beta(std::size_t m);

/// alpha * (1/m + 4) * m^2 * c^2 / 2 : ceiling on liminf F(x_k) - F* for a
/// cyclic order with constant stepsize.
double cyclic_error_bound(const BoundInputs &b);

/// alpha * 5 * m * c^2 / 2 : ceiling on inf F(x_k) - F* (w.p. 1) for
/// uniformly sampled components.
double randomized_error_bound(const BoundInputs &b);

/// N = m * floor(dist0^2 / (alpha * epsilon)) iterations suffice to reach
/// min_k F(x_k) <= F* + (alpha beta m^2 c^2 + epsilon)/2 under cyclic order.
std::uint64_t cyclic_iteration_estimate(const BoundInputs &b);

/// Upper estimate m * dist0^2 / (alpha * epsilon) on E{N} for the
/// randomized order. This bounds the mean, not N itself.
double randomized_expected_iterations(const BoundInputs &b);

/// Empirical c: the largest oracle norm seen in a run. Throws
/// EstimationError on an empty log.
double estimate_c(const OracleLog &log);

struct BoundReport {
  BoundInputs inputs;
  bool c_is_empirical = true;
  double cyclic_bound = 0.0;
  double randomized_bound = 0.0;
  /// Present only when dist(x_0; X*) is known exactly.
  std::optional<std::uint64_t> cyclic_N;
  std::optional<double> randomized_EN;
  std::optional<double> observed_gap;
};

/// Evaluate every bound. Iteration estimates are filled only when
/// `dist0_known`.
BoundReport make_bound_report(const BoundInputs &inputs, bool dist0_known,
                              bool c_is_empirical,
                              std::optional<double> observed_gap);

} // namespace incrprox
