#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rank1/classify.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {
const RatVec kPool = rv({"-2", "-1", "-1/2", "0", "1/2", "1", "2"});
}

TEST_CASE("classification of the column landscape") {
  Instance inst = column_instance();  // u = (0,1), v = (1)

  SUBCASE("origin is a saddle via (30a)") {
    auto c = classify_point(inst, Point{rv({"0", "0"}), rv({"0"})});
    CHECK(c.kind == PointKind::Saddle);
    CHECK(c.condition == MatchedCondition::C30a);
  }
  SUBCASE("flat spurious point via (29a)") {
    auto c = classify_point(inst, Point{rv({"1", "0"}), rv({"0"})});
    CHECK(c.kind == PointKind::SpuriousLocalMin);
    CHECK(c.condition == MatchedCondition::C29a);
    CHECK(c.f_value == 1);
  }
  SUBCASE("hyperbola points are global minima with their scaling") {
    auto c = classify_point(inst, Point{rv({"0", "3"}), rv({"1/3"})});
    CHECK(c.kind == PointKind::GlobalMin);
    CHECK(c.condition == MatchedCondition::C28);
    REQUIRE(c.theta.has_value());
    CHECK(*c.theta == 3);
  }
  SUBCASE("generic point is not critical") {
    auto c = classify_point(inst, Point{rv({"1", "1"}), rv({"1"})});
    CHECK(c.kind == PointKind::NotCritical);
  }
}

TEST_CASE("classification of the staircase saddle") {
  auto c = classify_point(staircase_instance(), staircase_point());
  CHECK(c.kind == PointKind::Saddle);
  CHECK(c.condition == MatchedCondition::C30cd);
  CHECK(c.f_value == 24);
}

TEST_CASE("sign-cancelling saddle via (30a) with zero sum") {
  Instance inst = Instance::from_factors(rv({"1", "1"}), rv({"1"}));
  Point p{rv({"1", "-1"}), rv({"0"})};
  auto c = classify_point(inst, p);
  CHECK(c.kind == PointKind::Saddle);
  CHECK(c.condition == MatchedCondition::C30a);
}

TEST_CASE("descent at the origin saddle") {
  Instance inst = column_instance();
  Point origin{rv({"0", "0"}), rv({"0"})};
  DescentPlan plan = descent_direction(inst, origin);
  CHECK(plan.theta == 1);
  CHECK(plan.direction.x == rv({"0", "1"}));
  CHECK(plan.direction.y == rv({"1"}));
  // f(origin + t d) = |t^2 - 1| = (1 - t^2) f(origin) for t in (0, 1].
  CHECK(verify_descent(inst, origin, plan, Rational(1, 2)));
  CHECK(verify_descent(inst, origin, plan, plan.valid_step_bound));
  CHECK(verify_descent(inst, origin, plan, plan.valid_step_bound / 2));
  CHECK(verify_descent(inst, origin, plan, Rational(1)));  // lands on the minimum
}

TEST_CASE("descent at the staircase saddle uses the binding ratio") {
  Instance inst = staircase_instance();
  Point p = staircase_point();
  DescentPlan plan = descent_direction(inst, p);
  CHECK(plan.theta == 1);
  for (const char* t_text : {"1/8", "1/16"}) {
    const Rational t = parse_rational(t_text);
    CHECK(verify_descent(inst, p, plan, t));
    CHECK(eval_f(inst, point_axpy(p, t, plan.direction)) ==
          (1 - t * t) * 24);
  }
}

TEST_CASE("descent on the two-row sign-cancelling saddle") {
  Instance inst = Instance::from_factors(rv({"1", "1"}), rv({"1"}));
  Point p{rv({"1", "-1"}), rv({"0"})};
  DescentPlan plan = descent_direction(inst, p);
  CHECK(plan.theta == 1);
  CHECK(plan.direction.x == rv({"0", "2"}));
  CHECK(plan.direction.y == rv({"1"}));
  const Rational t(1, 4);
  CHECK(eval_f(inst, point_axpy(p, t, plan.direction)) ==
        (1 - t * t) * 2);
}

TEST_CASE("descent with a signed theta") {
  // u = (0,1): saddle at |x2| = |x1| with negative signed sum.
  Instance inst = column_instance();
  Point p{rv({"1", "-1"}), rv({"0"})};
  auto c = classify_point(inst, p);
  REQUIRE(c.kind == PointKind::Saddle);
  REQUIRE(c.condition == MatchedCondition::C30a);
  DescentPlan plan = descent_direction(inst, p);
  CHECK(plan.theta == -1);  // sign of sum sign(u_i) x_i = -1
  CHECK(verify_descent(inst, p, plan, plan.valid_step_bound));
  CHECK(verify_descent(inst, p, plan, plan.valid_step_bound / 2));
}

TEST_CASE("descent direction preconditions") {
  Instance inst = column_instance();
  CHECK_THROWS_AS(descent_direction(inst, Point{rv({"0", "3"}), rv({"1/3"})}),
                  PreconditionViolated);  // global minimum
  CHECK_THROWS_AS(descent_direction(inst, Point{rv({"1", "0"}), rv({"0"})}),
                  PreconditionViolated);  // spurious local minimum

  Instance zero = Instance::from_factors(rv({"0", "0"}), rv({"0"}));
  CHECK_THROWS_AS(descent_direction(zero, Point{rv({"1", "1"}), rv({"1"})}),
                  PreconditionViolated);
}

TEST_CASE("spurious witness construction") {
  SUBCASE("mixed zeros in u") {
    auto w = spurious_witness(column_instance());
    REQUIRE(w.has_value());
    CHECK(w->x == rv({"1", "0"}));
    CHECK(w->y == rv({"0"}));
    CHECK(classify_point(column_instance(), *w).kind ==
          PointKind::SpuriousLocalMin);
  }
  SUBCASE("mixed zeros in v") {
    Instance inst = Instance::from_factors(rv({"1"}), rv({"1", "0"}));
    auto w = spurious_witness(inst);
    REQUIRE(w.has_value());
    CHECK(w->x == rv({"0"}));
    CHECK(w->y == rv({"0", "1"}));
    CHECK(classify_point(inst, *w).kind == PointKind::SpuriousLocalMin);
  }
  SUBCASE("no zeros anywhere") {
    Instance inst = Instance::from_factors(rv({"1", "1"}), rv({"1", "1"}));
    CHECK(!spurious_witness(inst).has_value());
  }
  SUBCASE("zero matrix") {
    Instance inst = Instance::from_factors(rv({"0", "0"}), rv({"0"}));
    CHECK(!spurious_witness(inst).has_value());
  }
}

TEST_CASE("theorem predicate") {
  CHECK(!theorem1_predicate(rm(2, 1, {"0", "1"})));
  CHECK(theorem1_predicate(rm(2, 2, {"2", "1", "-1", "-1/2"})));
  CHECK(theorem1_predicate(rm(2, 2, {"0", "0", "0", "0"})));
  CHECK_THROWS_AS(theorem1_predicate(rm(2, 2, {"1", "0", "0", "1"})),
                  RankTooHigh);
}

TEST_CASE("spurious probe finds no decrease and respects the exact bound") {
  Instance inst = column_instance();
  Point p{rv({"1", "0"}), rv({"0"})};
  CHECK(spurious_probe_radius(inst, p) == Rational(1, 4));

  SpuriousProbeConfig cfg;
  cfg.samples = 400;
  cfg.seed = 2024;
  auto res = spurious_probe(inst, p, cfg);
  CHECK(res.decreases == 0);
  CHECK(res.premise_failures == 0);
  CHECK(res.bound_failures == 0);
  // Two effective coordinates: the halved slack bound applies throughout.
  CHECK(res.half_bound_applicable == res.samples);
  CHECK(res.half_bound_failures == 0);
}

TEST_CASE("spurious probe on the mirrored clause") {
  Instance inst = Instance::from_factors(rv({"1"}), rv({"1", "0"}));
  Point p{rv({"0"}), rv({"0", "2"})};
  auto c = classify_point(inst, p);
  REQUIRE(c.kind == PointKind::SpuriousLocalMin);
  REQUIRE(c.condition == MatchedCondition::C29b);
  SpuriousProbeConfig cfg;
  cfg.samples = 200;
  cfg.seed = 7;
  auto res = spurious_probe(inst, p, cfg);
  CHECK(res.decreases == 0);
  CHECK(res.bound_failures == 0);
}

TEST_CASE("probe rejects non-spurious points") {
  CHECK_THROWS_AS(
      spurious_probe(column_instance(), Point{rv({"0", "0"}), rv({"0"})},
                     SpuriousProbeConfig{}),
      PreconditionViolated);
}

TEST_CASE("classification partitions critical points deterministically") {
  std::mt19937_64 rng(53);
  int saddles = 0, spurious = 0, globals = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const int m = 1 + rng() % 3, n = 1 + rng() % 3;
    RatVec u(m), v(n);
    Point p{RatVec(m), RatVec(n)};
    for (auto& e : u) e = kPool[rng() % kPool.size()];
    for (auto& e : v) e = kPool[rng() % kPool.size()];
    for (auto& e : p.x) e = kPool[rng() % kPool.size()];
    for (auto& e : p.y) e = kPool[rng() % kPool.size()];
    // Critical points concentrate on the coordinate hyperplanes; steer a
    // third of the samples there.
    if (trial % 3 == 0) p.y.assign(n, Rational(0));
    if (trial % 3 == 1) p.x.assign(m, Rational(0));
    Instance inst = Instance::from_factors(u, v);

    auto c = classify_point(inst, p);
    switch (c.kind) {
      case PointKind::GlobalMin:
        ++globals;
        CHECK(c.f_value == 0);
        break;
      case PointKind::SpuriousLocalMin:
        ++spurious;
        CHECK(c.f_value > 0);
        break;
      case PointKind::Saddle:
        ++saddles;
        CHECK(c.f_value > 0);
        break;
      case PointKind::NotCritical:
        CHECK(!is_critical_lp(inst, p).is_critical);
        break;
    }
    // Deterministic and stable on repeat.
    auto again = classify_point(inst, p);
    CHECK(again.kind == c.kind);
    CHECK(again.condition == c.condition);
  }
  CHECK(saddles > 5);
  CHECK(spurious > 0);
  CHECK(globals > 5);
}

TEST_CASE("classification kind is invariant under factor scaling") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 1 + rng() % 3, n = 1 + rng() % 3;
    RatVec u(m), v(n);
    Point p{RatVec(m), RatVec(n)};
    for (auto& e : u) e = kPool[rng() % kPool.size()];
    for (auto& e : v) e = kPool[rng() % kPool.size()];
    for (auto& e : p.x) e = kPool[rng() % kPool.size()];
    for (auto& e : p.y) e = kPool[rng() % kPool.size()];
    Instance inst = Instance::from_factors(u, v);
    auto base = classify_point(inst, p);
    for (const char* theta_text : {"2", "-1", "1/2"}) {
      const Rational theta = parse_rational(theta_text);
      Point q;
      for (const auto& xi : p.x) q.x.push_back(xi * theta);
      for (const auto& yj : p.y) q.y.push_back(yj / theta);
      CHECK(classify_point(inst, q).kind == base.kind);
    }
  }
}

TEST_CASE("saddles admit verified descent everywhere in a fuzz sweep") {
  std::mt19937_64 rng(61);
  int exercised = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + rng() % 3, n = 1 + rng() % 3;
    RatVec u(m), v(n);
    Point p{RatVec(m), RatVec(n)};
    for (auto& e : u) e = kPool[rng() % kPool.size()];
    for (auto& e : v) e = kPool[rng() % kPool.size()];
    for (auto& e : p.x) e = kPool[rng() % kPool.size()];
    for (auto& e : p.y) e = kPool[rng() % kPool.size()];
    if (trial % 2 == 0) p.y.assign(n, Rational(0));
    Instance inst = Instance::from_factors(u, v);
    auto c = classify_point(inst, p);
    if (c.kind != PointKind::Saddle) continue;
    ++exercised;
    DescentPlan plan = descent_direction(inst, p);
    CHECK(verify_descent(inst, p, plan, plan.valid_step_bound));
    CHECK(verify_descent(inst, p, plan, plan.valid_step_bound / 2));
  }
  CHECK(exercised > 5);
}
