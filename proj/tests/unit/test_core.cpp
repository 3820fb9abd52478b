#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "incrprox/apps.hpp"
#include "incrprox/functions.hpp"
#include "incrprox/sets.hpp"

using namespace incrprox;
using testing::random_vector;
using testing::vec;

TEST_CASE("evaluate_total sums every component") {
  Problem p;
  p.dim = 1;
  p.constraint = make_whole_space();
  p.components = {{make_zero(), make_abs_shift(0.0), "abs"}};
  CHECK(evaluate_total(p, vec({-2.0})) == 2.0);

  Problem q = onedim_abs_benchmark({0.0, 1.0, 2.0});
  CHECK(evaluate_total(q, vec({1.0})) == 2.0);

  CHECK_THROWS_AS(evaluate_total(q, vec({1.0, 2.0})), ConfigError);
}

TEST_CASE("evaluate_total on a lasso instance at the origin") {
  LassoInstance inst = random_lasso(7, 3, 0.4, 11, 2);
  Problem p = lasso_problem(inst);
  double expected = 0.0;
  for (const auto &r : inst.rows)
    expected += 0.5 * r.d * r.d;
  CHECK(evaluate_total(p, Vector::Zero(3)) == Catch::Approx(expected).epsilon(1e-15));
}

TEST_CASE("check_subgradient examples") {
  const auto absf = make_abs_shift(0.0);
  const std::vector<Vector> both{vec({-1.0}), vec({1.0})};
  CHECK(check_subgradient(*absf, vec({0.0}), both, 0.0, vec({0.0})));
  const std::vector<Vector> one{vec({1.0})};
  CHECK_FALSE(check_subgradient(*absf, vec({0.0}), one, 0.0, vec({2.0})));

  // max(0, x) = 1 * max{0, g(x)} with g(x) = x
  const auto hinge = make_max_penalty(make_affine(vec({1.0}), 0.0), 1.0);
  CHECK(check_subgradient(*hinge, vec({0.0}), both, 0.0, vec({0.5})));
  // tie-break at the kink is zero
  CHECK(hinge->subgradient(vec({0.0}))[0] == 0.0);

  CHECK(check_subgradient(*absf, vec({3.0}), std::vector<Vector>{}, 0.0));
}

namespace {

std::vector<std::pair<std::string, SetPtr>> sample_sets() {
  return {
      {"whole", make_whole_space()},
      {"box", make_box(vec({-1.0, 0.0, 2.0}), vec({1.0, 0.5, 3.0}))},
      {"ball", make_ball(vec({0.5, -0.5, 1.0}), 1.5)},
      {"halfspace", make_halfspace(vec({1.0, -2.0, 0.5}), 0.3)},
      {"hyperplane", make_hyperplane(vec({0.0, 1.0, 1.0}), 1.0)},
      {"intersection",
       make_intersection({make_hyperplane(vec({1.0, 1.0, 1.0}), 1.0),
                          make_hyperplane(vec({1.0, -1.0, 0.0}), 0.0)})},
  };
}

} // namespace

TEST_CASE("projections are nonexpansive, idempotent and consistent") {
  SplitMix64 rng(2024);
  for (const auto &[name, set] : sample_sets()) {
    INFO(name);
    for (int t = 0; t < 1000; ++t) {
      const Vector u = random_vector(rng, 3, 4.0);
      const Vector v = random_vector(rng, 3, 4.0);
      const Vector pu = set->project(u), pv = set->project(v);
      REQUIRE((pu - pv).norm() <= (u - v).norm() + 1e-12);
      REQUIRE((set->project(pu) - pu).norm() <= 1e-9);
      REQUIRE(std::abs(set->distance(u) - (u - pu).norm()) <= 1e-12);
      REQUIRE(set->contains(pu, 1e-9));
    }
  }
}

TEST_CASE("contains agrees with zero distance") {
  const auto ball = make_ball(vec({0.0, 0.0}), 1.0);
  CHECK(ball->contains(vec({0.6, 0.8}), 0.0));
  CHECK(ball->distance(vec({0.0, 0.5})) == 0.0);
  CHECK_FALSE(ball->contains(vec({0.0, 1.1}), 1e-9));
  const auto box = make_box(vec({0.0}), vec({1.0}));
  CHECK(box->contains(vec({1.0}), 0.0));
  CHECK_FALSE(box->contains(vec({1.0 + 1e-6}), 1e-9));
}

TEST_CASE("projections match the textbook formulas") {
  using oracle::SetDesc;
  SplitMix64 rng(7);
  const Vector a = vec({1.0, 2.0}), c = vec({0.3, -0.2});
  const auto hs = make_halfspace(a, 0.5);
  const auto ball = make_ball(c, 0.7);
  const auto box = make_box(vec({-0.5, 0.0}), vec({0.5, 1.0}));
  const SetDesc hs_ref{SetDesc::Halfspace, {1.0, 2.0}, {}, 0.5};
  const SetDesc ball_ref{SetDesc::Ball, {0.3, -0.2}, {}, 0.7};
  const SetDesc box_ref{SetDesc::Box, {-0.5, 0.0}, {0.5, 1.0}, 0.0};
  for (int t = 0; t < 500; ++t) {
    const Vector x = random_vector(rng, 2, 3.0);
    const auto px = testing::to_point(x);
    CHECK((hs->project(x) - testing::from_point(oracle::projection_reference(hs_ref, px)))
              .norm() <= 1e-14);
    CHECK((ball->project(x) -
           testing::from_point(oracle::projection_reference(ball_ref, px)))
              .norm() <= 1e-14);
    CHECK((box->project(x) - testing::from_point(oracle::projection_reference(box_ref, px)))
              .norm() == 0.0);
  }
  // the worked examples
  CHECK(make_halfspace(vec({1.0, 0.0}), 0.0)->project(vec({2.0, 1.0})) == vec({0.0, 1.0}));
  CHECK(make_ball(vec({0.0, 0.0}), 1.0)->project(vec({0.0, 2.0})) == vec({0.0, 1.0}));
  CHECK(make_box(vec({0.0, 0.0}), vec({1.0, 1.0}))->project(vec({-1.0, 2.0})) ==
        vec({0.0, 1.0}));
}

TEST_CASE("points already in a set come back bitwise unchanged") {
  SplitMix64 rng(99);
  for (const auto &[name, set] : sample_sets()) {
    INFO(name);
    for (int t = 0; t < 100; ++t) {
      const Vector p = set->project(random_vector(rng, 3, 4.0));
      if (set->contains(p, 0.0))
        CHECK(set->project(p) == p);
    }
  }
}

TEST_CASE("ball and halfspace projections are bitwise idempotent") {
  SplitMix64 rng(31);
  for (int t = 0; t < 2000; ++t) {
    const auto ball = make_ball(random_vector(rng, 2), 0.1 + rng.uniform());
    const auto hs = make_halfspace(random_vector(rng, 3), rng.uniform() - 0.5);
    const Vector pb = ball->project(random_vector(rng, 2, 4.0));
    const Vector ph = hs->project(random_vector(rng, 3, 4.0));
    REQUIRE(ball->contains(pb, 0.0));
    REQUIRE(ball->project(pb) == pb);
    REQUIRE(hs->contains(ph, 0.0));
    REQUIRE(hs->project(ph) == ph);
  }
}

TEST_CASE("intersection projection finds the nearest common point") {
  // unit box and the halfspace x + y <= 1: from (2, 2) the answer is (0.5, 0.5)
  const auto set = make_intersection(
      {make_box(vec({0.0, 0.0}), vec({1.0, 1.0})), make_halfspace(vec({1.0, 1.0}), 1.0)});
  const Vector p = set->project(vec({2.0, 2.0}));
  CHECK((p - vec({0.5, 0.5})).norm() <= 1e-8);
  // alternating projections would stop at (0.9, 0.1); the nearest point is (1, 0)
  const Vector q = set->project(vec({2.0, 0.2}));
  CHECK((q - vec({1.0, 0.0})).norm() <= 1e-8);
}

TEST_CASE("every subgradient oracle satisfies the subgradient inequality") {
  SplitMix64 rng(5);
  const std::vector<std::pair<std::string, FunctionPtr>> fns{
      {"zero", make_zero()},
      {"l1", make_l1(0.7)},
      {"rank1", make_rank1_quadratic(vec({1.0, -2.0, 0.5}), 0.3)},
      {"weighted_norm", make_weighted_norm(vec({0.1, 0.2, -0.3}), 1.7)},
      {"squared_distance", make_squared_distance(vec({1.0, 0.0, -1.0}), 0.5)},
      {"affine", make_affine(vec({0.5, -1.0, 2.0}), 1.0)},
      {"dist_ball", make_distance(make_ball(vec({0.0, 0.0, 0.0}), 1.0), 2.0)},
      {"dist_halfspace", make_distance(make_halfspace(vec({1.0, 1.0, 0.0}), 0.0), 0.5)},
      {"max_penalty",
       make_max_penalty(make_squared_distance(vec({0.0, 0.0, 0.0}), 1.0), 3.0)},
      {"scaled", make_scaled(make_l1(1.0), 2.5)},
      {"sum", make_sum({make_l1(0.3), make_weighted_norm(vec({1.0, 1.0, 1.0}), 1.0)})},
  };
  for (const auto &[name, fn] : fns) {
    INFO(name);
    for (int t = 0; t < 1000; ++t) {
      const Vector x = random_vector(rng, 3, 2.0);
      std::vector<Vector> samples;
      for (int s = 0; s < 10; ++s)
        samples.push_back(random_vector(rng, 3, 2.0));
      REQUIRE(check_subgradient(*fn, x, samples, 1e-9));
    }
    // kinks use the documented zero tie-break where it applies
    CHECK(all_finite(fn->subgradient(Vector::Zero(3))));
  }
}

TEST_CASE("1-D absolute value subgradient ties break to zero") {
  CHECK(make_abs_shift(2.0)->subgradient(vec({2.0}))[0] == 0.0);
  CHECK(make_l1(1.0)->subgradient(vec({0.0, 1.0})) == vec({0.0, 1.0}));
  CHECK(make_weighted_norm(vec({1.0, 1.0}), 2.0)->subgradient(vec({1.0, 1.0})) ==
        vec({0.0, 0.0}));
}

TEST_CASE("problem validation") {
  Problem p;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = onedim_abs_benchmark({1.0, 2.0});
  CHECK_NOTHROW(p.validate());
  p.components.push_back({nullptr, make_zero(), "bad"});
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
