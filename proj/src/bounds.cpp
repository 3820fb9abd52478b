#include "incrprox/bounds.hpp"

#include <cmath>
#include <limits>

namespace incrprox {

void BoundInputs::validate() const {
  auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!pos(alpha))
    throw ParameterError("bounds: alpha must be positive");
  if (m == 0)
    throw ParameterError("bounds: m must be positive");
  if (!pos(c))
    throw ParameterError("bounds: c must be positive");
  if (!(dist0 >= 0.0) || !std::isfinite(dist0))
    throw ParameterError("bounds: dist0 must be nonnegative");
  if (!pos(epsilon))
    throw ParameterError("bounds: epsilon must be positive");
}

double cyclic_beta(std::size_t m) {
  return 1.0 / static_cast<double>(m) + 4.0;
}

double cyclic_error_bound(const BoundInputs &b) {
  b.validate();
  const double m = static_cast<double>(b.m);
  return b.alpha * cyclic_beta(b.m) * m * m * b.c * b.c / 2.0;
}

double randomized_error_bound(const BoundInputs &b) {
  b.validate();
  const double m = static_cast<double>(b.m);
  return b.alpha * 5.0 * m * b.c * b.c / 2.0;
}

std::uint64_t cyclic_iteration_estimate(const BoundInputs &b) {
  b.validate();
  const double q = b.dist0 * b.dist0 / (b.alpha * b.epsilon);
  // 1/(0.1*0.1) evaluates to 99.999..., so snap quotients within a few ulps
  // of an integer before flooring
  const double r = std::round(q);
  const double cycles =
      std::abs(q - r) <= 8.0 * std::numeric_limits<double>::epsilon() * r
          ? r
          : std::floor(q);
  return static_cast<std::uint64_t>(b.m) * static_cast<std::uint64_t>(cycles);
}

double randomized_expected_iterations(const BoundInputs &b) {
  b.validate();
  return static_cast<double>(b.m) * b.dist0 * b.dist0 / (b.alpha * b.epsilon);
}

double estimate_c(const OracleLog &log) {
  if (log.count == 0)
    throw EstimationError("estimate_c: oracle log is empty");
  return log.max_norm;
}

BoundReport make_bound_report(const BoundInputs &inputs, bool dist0_known,
                              bool c_is_empirical,
                              std::optional<double> observed_gap) {
  BoundReport r;
  r.inputs = inputs;
  r.c_is_empirical = c_is_empirical;
  r.cyclic_bound = cyclic_error_bound(inputs);
  r.randomized_bound = randomized_error_bound(inputs);
  if (dist0_known) {
    r.cyclic_N = cyclic_iteration_estimate(inputs);
    r.randomized_EN = randomized_expected_iterations(inputs);
  }
  r.observed_gap = observed_gap;
  return r;
}

} // namespace incrprox
