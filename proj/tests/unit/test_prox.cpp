#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "incrprox/functions.hpp"
#include "incrprox/prox.hpp"
#include "incrprox/sets.hpp"

using namespace incrprox;
using testing::random_vector;
using testing::vec;

TEST_CASE("shrink examples") {
  CHECK(shrink(vec({0.0, 0.0, 0.0}), 1.3, 0.7) == vec({0.0, 0.0, 0.0}));
  CHECK(shrink(vec({3.0, -0.5, -4.0}), 2.0, 0.5) == vec({2.0, 0.0, -3.0}));
  // boundary |x| == gamma*alpha maps to zero
  CHECK(shrink(vec({1.0, -1.0}), 1.0, 1.0) == vec({0.0, 0.0}));

  const double t = oracle::numeric_prox_1d(
      [](double z) { return std::abs(z); }, 1.0, 1.0, 1e-10, 1.0);
  CHECK(std::abs(t - 0.0) <= 1e-8);

  CHECK_THROWS_AS(shrink(vec({1.0}), 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(shrink(vec({1.0}), 1.0, -1.0), ParameterError);
}

TEST_CASE("shrink is nonexpansive") {
  SplitMix64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const Vector u = random_vector(rng, 4, 3.0), v = random_vector(rng, 4, 3.0);
    REQUIRE((shrink(u, 0.8, 0.9) - shrink(v, 0.8, 0.9)).norm() <= (u - v).norm());
  }
}

TEST_CASE("rank-one quadratic prox examples") {
  CHECK(prox_rank1_quadratic(vec({2.0, 3.0}), vec({0.0, 0.0}), 1.0, 1.0) == vec({2.0, 3.0}));
  CHECK(prox_rank1_quadratic(vec({1.0, 1.0}), vec({1.0, 1.0}), 2.0, 1.0) == vec({1.0, 1.0}));
  const Vector z = prox_rank1_quadratic(vec({2.0, 3.0}), vec({1.0, 0.0}), 0.0, 1.0);
  const auto ref = oracle::numeric_prox(
      [](const oracle::Point &p) { return 0.5 * p[0] * p[0]; }, {2.0, 3.0}, 1.0,
      1e-10, 3.0);
  CHECK((z - testing::from_point(ref)).norm() <= 1e-7);
  CHECK((z - vec({1.0, 3.0})).norm() <= 1e-15);
}

TEST_CASE("weighted norm prox examples") {
  CHECK(prox_weighted_norm(vec({1.0, 2.0}), vec({1.0, 2.0}), 1.0, 1.0) == vec({1.0, 2.0}));
  const Vector z = prox_weighted_norm(vec({3.0, 4.0}), vec({0.0, 0.0}), 1.0, 1.0);
  CHECK((z - vec({2.4, 3.2})).norm() <= 1e-15);
  // radial 1-D oracle: minimize t + (t - 5)^2 / 2 over t >= 0
  const double r = oracle::numeric_prox_1d([](double t) { return std::abs(t); }, 5.0,
                                           1.0, 1e-10, 1.0);
  // golden section resolves a smooth minimum only to about sqrt(eps)
  CHECK(std::abs(z.norm() - r) <= 1e-7);
  CHECK(prox_weighted_norm(vec({3.0, 4.0}), vec({0.0, 0.0}), 1.0, 10.0) == vec({0.0, 0.0}));
}

TEST_CASE("interpolated projection examples") {
  const auto hs = make_halfspace(vec({1.0, 0.0}), 0.0);
  CHECK(interpolated_projection(vec({-1.0, 5.0}), *hs, 1.0, 1.0) == vec({-1.0, 5.0}));
  CHECK(interpolated_projection(vec({2.0, 1.0}), *hs, 1.0, 1.0) == vec({1.0, 1.0}));
  CHECK(interpolated_projection(vec({2.0, 1.0}), *hs, 3.0, 1.0) == vec({0.0, 1.0}));

  const oracle::SetDesc ref{oracle::SetDesc::Halfspace, {1.0, 0.0}, {}, 0.0};
  for (double ag : {1.0, 3.0}) {
    const auto p = oracle::numeric_prox(
        [&](const oracle::Point &z) { return ag * oracle::distance_reference(ref, z); },
        {2.0, 1.0}, 1.0, 1e-10, ag);
    CHECK((interpolated_projection(vec({2.0, 1.0}), *hs, ag, 1.0) -
           testing::from_point(p))
              .norm() <= 1e-6);
  }
}

TEST_CASE("numeric fallback examples") {
  const auto box = make_box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  const ZeroFunction zero;
  CHECK(prox_numeric_fallback(zero, vec({2.0, -1.0}), 0.5, *box, 1e-8) == vec({1.0, 0.0}));

  const WholeSpace whole;
  const L1Norm l1(0.8);
  SplitMix64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const Vector c = random_vector(rng, 1, 3.0);
    const Vector z = prox_numeric_fallback(l1, c, 0.7, whole, 1e-9);
    CHECK((z - shrink(c, 0.8, 0.7)).norm() <= 1e-8);
  }

  const auto hs = make_halfspace(vec({1.0, 1.0}), 0.0);
  const DistanceFunction dist(hs, 1.5);
  for (int t = 0; t < 50; ++t) {
    const Vector c = random_vector(rng, 2, 3.0);
    const Vector z = prox_numeric_fallback(dist, c, 0.6, whole, 1e-9);
    CHECK((z - interpolated_projection(c, *hs, 1.5, 0.6)).norm() <= 1e-8);
  }
}

TEST_CASE("numeric fallback reports exhaustion") {
  const WholeSpace whole;
  const WeightedNorm wn(vec({0.3, 0.1, -0.2}), 2.0);
  try {
    (void)prox_numeric_fallback(wn, vec({5.0, 1.0, 2.0}), 1.0, whole, 1e-12, 5);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError &e) {
    CHECK(e.residual() > 0.0);
  }
}

namespace {

struct Op {
  std::string name;
  FunctionPtr fn;
};

std::vector<Op> operators(SplitMix64 &rng) {
  return {
      {"l1", make_l1(0.1 + rng.uniform())},
      {"rank1", make_rank1_quadratic(random_vector(rng, 3, 2.0), rng.uniform())},
      {"weighted_norm", make_weighted_norm(random_vector(rng, 3), 0.2 + rng.uniform())},
      {"squared_distance", make_squared_distance(random_vector(rng, 3), 0.1 + rng.uniform())},
      {"affine", make_affine(random_vector(rng, 3), rng.uniform())},
      {"dist_ball", make_distance(make_ball(random_vector(rng, 3), 0.5), 0.5 + rng.uniform())},
      {"dist_halfspace",
       make_distance(make_halfspace(random_vector(rng, 3) + vec({0.0, 0.0, 2.0}), 0.2),
                     0.5 + rng.uniform())},
      {"dist_box", make_distance(make_box(vec({-0.5, -0.5, -0.5}), vec({0.5, 0.5, 0.5})),
                                 0.5 + rng.uniform())},
      {"scaled_l1", make_scaled(make_l1(1.0), 0.1 + rng.uniform())},
      {"sum_fallback", make_sum({make_l1(0.3), make_weighted_norm(random_vector(rng, 3), 0.5)})},
      {"max_penalty_fallback",
       make_max_penalty(make_affine(random_vector(rng, 3), 0.1), 0.5 + rng.uniform())},
  };
}

} // namespace

TEST_CASE("prox three-point inequality") {
  SplitMix64 rng(41);
  const auto ball = make_ball(vec({0.0, 0.0, 0.0}), 1.0);
  const WholeSpace whole;
  for (int round = 0; round < 30; ++round) {
    for (const auto &op : operators(rng)) {
      INFO(op.name);
      const double alpha = 0.05 + rng.uniform();
      const Vector x = random_vector(rng, 3, 3.0);
      for (const ConstraintSet *X : {static_cast<const ConstraintSet *>(&whole),
                                     static_cast<const ConstraintSet *>(ball.get())}) {
        const Vector z = op.fn->prox(x, alpha, X);
        const Vector y = X->project(random_vector(rng, 3, 3.0));
        const double lhs = (z - y).squaredNorm();
        const double rhs = (x - y).squaredNorm() -
                           2.0 * alpha * (op.fn->value(z) - op.fn->value(y));
        REQUIRE(lhs <= rhs + 1e-8);
      }
    }
  }
}

TEST_CASE("prox step recovers a subgradient") {
  SplitMix64 rng(43);
  for (int round = 0; round < 30; ++round) {
    for (const auto &op : operators(rng)) {
      INFO(op.name);
      const double alpha = 0.05 + rng.uniform();
      const Vector x = random_vector(rng, 3, 3.0);
      // the fallback's error is amplified by 1/alpha, so solve it tightly
      const Vector z = op.fn->prox(x, alpha, nullptr, Tolerances{.oracle = 1e-12});
      const Vector g = (x - z) / alpha;
      std::vector<Vector> samples;
      for (int s = 0; s < 10; ++s)
        samples.push_back(random_vector(rng, 3, 3.0));
      REQUIRE(check_subgradient(*op.fn, z, samples, 1e-8, g));
    }
  }
}

TEST_CASE("closed forms agree with the numeric fallback") {
  SplitMix64 rng(47);
  const WholeSpace whole;
  for (int t = 0; t < 200; ++t) {
    for (const auto &op : operators(rng)) {
      INFO(op.name);
      const double alpha = 0.05 + rng.uniform();
      const Vector x = random_vector(rng, 3, 3.0);
      const auto closed = op.fn->prox_closed_form(x, alpha);
      if (!closed)
        continue;
      const Vector z = prox_numeric_fallback(*op.fn, x, alpha, whole, 1e-7);
      REQUIRE((z - *closed).norm() <= 1e-5);
    }
  }
}

TEST_CASE("constrained prox stays feasible and matches the fallback") {
  SplitMix64 rng(53);
  const auto ball = make_ball(vec({0.2, 0.0, -0.1}), 0.8);
  for (int t = 0; t < 50; ++t) {
    for (const auto &op : operators(rng)) {
      INFO(op.name);
      const double alpha = 0.05 + rng.uniform();
      const Vector x = random_vector(rng, 3, 3.0);
      const Vector z = op.fn->prox(x, alpha, ball.get());
      REQUIRE(ball->contains(z, 1e-9));
      const Vector ref = prox_numeric_fallback(*op.fn, x, alpha, *ball, 1e-8);
      REQUIRE((z - ref).norm() <= 1e-6);
    }
  }
}
