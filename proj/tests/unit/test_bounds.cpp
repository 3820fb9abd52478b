#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "incrprox/apps.hpp"
#include "incrprox/bounds.hpp"

using namespace incrprox;
using Catch::Approx;

namespace {

BoundInputs inputs(double alpha, std::size_t m, double c, double dist0 = 1.0,
                   double eps = 0.1) {
  BoundInputs b;
  b.alpha = alpha;
  b.m = m;
  b.c = c;
  b.dist0 = dist0;
  b.epsilon = eps;
  return b;
}

} // namespace

TEST_CASE("cyclic error bound") {
  CHECK(cyclic_error_bound(inputs(0.01, 10, 1.0)) == Approx(2.05).epsilon(1e-14));
  CHECK(cyclic_beta(1) == 5.0);
  CHECK(cyclic_error_bound(inputs(0.3, 1, 2.0)) == Approx(0.3 * 5.0 * 4.0 / 2.0).epsilon(1e-15));
  CHECK(cyclic_error_bound(inputs(1e-15, 10, 1.0)) < 1e-12);
}

TEST_CASE("randomized error bound") {
  CHECK(randomized_error_bound(inputs(0.01, 10, 1.0)) == Approx(0.25).epsilon(1e-14));
  const auto b = inputs(0.01, 10, 1.0);
  CHECK(cyclic_error_bound(b) / randomized_error_bound(b) == Approx(8.2).epsilon(1e-14));
  for (std::size_t m : {2, 3, 7, 50, 1000}) {
    const auto bm = inputs(0.02, m, 1.3);
    const double md = static_cast<double>(m);
    CHECK(cyclic_error_bound(bm) / randomized_error_bound(bm) ==
          Approx((1.0 / md + 4.0) * md / 5.0).epsilon(1e-13));
    CHECK(randomized_error_bound(bm) <= cyclic_error_bound(bm));
  }
  const auto one = inputs(0.4, 1, 0.7);
  CHECK(randomized_error_bound(one) == Approx(cyclic_error_bound(one)).epsilon(1e-15));
}

TEST_CASE("iteration estimates") {
  CHECK(cyclic_iteration_estimate(inputs(0.1, 5, 1.0, 1.0, 0.1)) == 500);
  CHECK(cyclic_iteration_estimate(inputs(0.1, 5, 1.0, 0.0, 0.1)) == 0);
  // doubling epsilon halves the floor argument
  CHECK(cyclic_iteration_estimate(inputs(0.1, 5, 1.0, 1.0, 0.2)) == 250);
  CHECK(cyclic_iteration_estimate(inputs(0.1, 5, 1.0, 1.0, 0.3)) == 5 * 33);

  CHECK(randomized_expected_iterations(inputs(0.1, 5, 1.0, 1.0, 0.1)) == Approx(500.0));
  CHECK(randomized_expected_iterations(inputs(0.1, 5, 1.0, 0.0, 0.1)) == 0.0);
  CHECK(randomized_expected_iterations(inputs(0.1, 5, 1.0, 1.0, 0.2)) == Approx(250.0));
  CHECK(randomized_expected_iterations(inputs(0.1, 5, 1.0, 1.0, 0.3)) ==
        Approx(5.0 / 0.03));
}

TEST_CASE("bounds are monotone in their inputs") {
  const auto base = inputs(0.05, 4, 1.5, 2.0, 0.1);
  auto more_alpha = base, more_c = base, more_eps = base;
  more_alpha.alpha *= 1.5;
  more_c.c *= 1.5;
  more_eps.epsilon *= 3.0;
  CHECK(cyclic_error_bound(more_alpha) > cyclic_error_bound(base));
  CHECK(cyclic_error_bound(more_c) > cyclic_error_bound(base));
  CHECK(randomized_error_bound(more_alpha) > randomized_error_bound(base));
  CHECK(randomized_error_bound(more_c) > randomized_error_bound(base));
  CHECK(cyclic_iteration_estimate(more_eps) < cyclic_iteration_estimate(base));
  CHECK(randomized_expected_iterations(more_eps) < randomized_expected_iterations(base));
}

TEST_CASE("invalid bound inputs") {
  CHECK_THROWS_AS(cyclic_error_bound(inputs(0.0, 3, 1.0)), ParameterError);
  CHECK_THROWS_AS(cyclic_error_bound(inputs(0.1, 0, 1.0)), ParameterError);
  CHECK_THROWS_AS(randomized_error_bound(inputs(0.1, 3, 0.0)), ParameterError);
  CHECK_THROWS_AS(cyclic_iteration_estimate(inputs(0.1, 3, 1.0, -1.0)), ParameterError);
  CHECK_THROWS_AS(randomized_expected_iterations(inputs(0.1, 3, 1.0, 1.0, 0.0)),
                  ParameterError);
}

TEST_CASE("estimating c from oracle logs") {
  OracleLog empty;
  CHECK_THROWS_AS(estimate_c(empty), EstimationError);

  OracleLog single;
  single.record(3.7);
  CHECK(estimate_c(single) == 3.7);
  single.record(1.0);
  CHECK(estimate_c(single) == 3.7);
  single.record(testing::vec({3.0, 4.0}));
  CHECK(estimate_c(single) == 5.0);

  // unit-slope absolute values
  RunConfig cfg;
  cfg.schedule = StepsizeSchedule::constant(0.01);
  cfg.limits.max_iters = 500;
  const Trace t = run(onedim_abs_benchmark({0.0, 1.0, 3.0, 4.5}), cfg);
  CHECK(estimate_c(t.oracle_log) == 1.0);
}

TEST_CASE("lasso c matches the logged residuals") {
  const LassoInstance inst = random_lasso(6, 3, 0.0, 8, 3);
  const Problem p = lasso_problem(inst);
  RunConfig cfg;
  cfg.variant = Variant::SubgradOnly;
  cfg.schedule = StepsizeSchedule::constant(0.02);
  cfg.limits.max_iters = 120;
  std::vector<Vector> points;
  cfg.observer = [&](const StepRecord &r) { points.push_back(r.x); };
  const Trace t = run(p, cfg);
  // recompute: every gradient logged is c_i (c_i'x - d_i) at a visited point
  double expected = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vector &x = points[k];
    if (k % inst.rows.size() == 0)
      for (const auto &row : inst.rows)
        expected = std::max(expected, row.c.norm() * std::abs(row.c.dot(x) - row.d));
    const auto &row = inst.rows[k % inst.rows.size()];
    expected = std::max(expected, row.c.norm() * std::abs(row.c.dot(x) - row.d));
  }
  CHECK(estimate_c(t.oracle_log) == Approx(expected).epsilon(1e-12));
}

TEST_CASE("bound reports") {
  const auto b = inputs(0.01, 10, 1.0, 4.0, 0.5);
  const auto known = make_bound_report(b, true, true, 0.1);
  CHECK(known.cyclic_bound == Approx(2.05));
  CHECK(known.randomized_bound == Approx(0.25));
  CHECK(known.cyclic_N == 10 * 3200);
  CHECK(*known.randomized_EN == Approx(32000.0));
  CHECK(known.observed_gap == 0.1);
  const auto unknown = make_bound_report(b, false, false, std::nullopt);
  CHECK_FALSE(unknown.cyclic_N.has_value());
  CHECK_FALSE(unknown.randomized_EN.has_value());
  CHECK_FALSE(unknown.c_is_empirical);
}
