#include <doctest.h>

#include <optional>
#include <random>

#include "fixtures.hpp"
#include "rank1/subdiff.hpp"

using namespace rank1;
using namespace rank1::testing;

namespace {

Point add_scaled(const Point& p, const Rational& t, const Point& d) {
  Point q = p;
  for (std::size_t i = 0; i < q.x.size(); ++i) q.x[i] += t * d.x[i];
  for (std::size_t j = 0; j < q.y.size(); ++j) q.y[j] += t * d.y[j];
  return q;
}

Rational quotient(const Instance& inst, const Point& p, const Point& d,
                  const Rational& t) {
  return (eval_f(inst, add_scaled(p, t, d)) - eval_f(inst, p)) / t;
}

// Smallest positive kink time of t -> f(p + t d) for a direction that
// moves only one factor, or nullopt when the path is kink-free on t > 0.
std::optional<Rational> first_kink(const Instance& inst, const Point& p,
                                   const Point& d) {
  RatMat R = residual(inst, p);
  std::optional<Rational> gap;
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      const Rational slope = p.x[i] * d.y[j] + d.x[i] * p.y[j];
      if (slope == 0 || R.at(i, j) == 0) continue;
      const Rational t = -R.at(i, j) / slope;
      if (t > 0 && (!gap || t < *gap)) gap = t;
    }
  }
  return gap;
}

const RatVec kPool = rv({"-2", "-1", "-1/2", "0", "1/2", "1", "2"});

}  // namespace

TEST_CASE("sign matrix") {
  SignMatrix S = sign_matrix(counterexample_instance(), counterexample_point());
  CHECK(S.at(0, 0) == SignValue::MinusOne);
  CHECK(S.at(0, 1) == SignValue::FullInterval);
  CHECK(S.at(1, 0) == SignValue::FullInterval);
  CHECK(S.at(1, 1) == SignValue::MinusOne);

  Instance inst = Instance::from_factors(rv({"1"}), rv({"1"}));
  SignMatrix Z = sign_matrix(inst, Point{rv({"1"}), rv({"1"})});
  CHECK(Z.at(0, 0) == SignValue::FullInterval);

  SignMatrix F = sign_matrix(staircase_instance(), staircase_point());
  CHECK(F.at(0, 0) == SignValue::MinusOne);
}

TEST_CASE("step functions of the staircase fixture match the plot") {
  Instance inst = staircase_instance();
  Point p = staircase_point();

  StepFunction alpha = step_alpha(inst, p);
  CHECK(alpha.breakpoints == rv({"-2", "1"}));
  CHECK(alpha.plateau_values == rv({"-2", "0", "2"}));

  StepFunction beta = step_beta(inst, p);
  CHECK(beta.breakpoints == rv({"-2", "-1", "1", "2"}));
  CHECK(beta.plateau_values == rv({"-6", "-4", "0", "4", "6"}));
}

TEST_CASE("step function edge cases") {
  SUBCASE("y = 0 gives a constant zero step function") {
    Instance inst = staircase_instance();
    Point p{staircase_point().x, rv({"0", "0", "0"})};
    StepFunction alpha = step_alpha(inst, p);
    CHECK(alpha.breakpoints.empty());
    CHECK(alpha.plateau_values == rv({"0"}));
  }
  SUBCASE("zero factors give the l1-norm sign function") {
    Instance inst = Instance::from_factors(rv({"0", "0"}), rv({"0"}));
    Point p{rv({"1", "2"}), rv({"-3"})};
    StepFunction alpha = step_alpha(inst, p);  // |y|_1 sign(t)
    CHECK(alpha.breakpoints == rv({"0"}));
    CHECK(alpha.plateau_values == rv({"-3", "3"}));
  }
  SUBCASE("x = 0 gives constant zero beta") {
    Instance inst = Instance::from_factors(rv({"1", "2"}), rv({"1"}));
    Point p{rv({"0", "0"}), rv({"5"})};
    StepFunction beta = step_beta(inst, p);
    CHECK(beta.breakpoints.empty());
    CHECK(beta.plateau_values == rv({"0"}));
  }
  SUBCASE("single absolute value") {
    Instance inst = Instance::from_factors(rv({"1"}), rv({"1"}));
    Point p{rv({"1"}), rv({"0"})};
    StepFunction beta = step_beta(inst, p);
    CHECK(beta.breakpoints == rv({"1"}));
    CHECK(beta.plateau_values == rv({"-1", "1"}));
  }
}

TEST_CASE("step_eval plateaus and jumps") {
  StepFunction alpha = step_alpha(staircase_instance(), staircase_point());

  auto at0 = step_eval(alpha, 0);
  REQUIRE(at0.intervals.size() == 1);
  CHECK(at0.intervals[0].is_point());
  CHECK(at0.contains(0));

  auto at1 = step_eval(alpha, 1);
  REQUIRE(at1.intervals.size() == 1);
  CHECK(*at1.intervals[0].lo == 0);
  CHECK(*at1.intervals[0].hi == 2);

  auto left = step_eval(alpha, -3);
  REQUIRE(left.intervals.size() == 1);
  CHECK(left.intervals[0].is_point());
  CHECK(*left.intervals[0].lo == -2);
}

TEST_CASE("roots of step functions") {
  SUBCASE("staircase alpha spans [-2, 1]") {
    auto r = roots(step_alpha(staircase_instance(), staircase_point()));
    REQUIRE(r.intervals.size() == 1);
    CHECK(*r.intervals[0].lo == -2);
    CHECK(*r.intervals[0].hi == 1);
  }
  SUBCASE("constant zero has every real as a root") {
    StepFunction sf{{}, rv({"0"})};
    auto r = roots(sf);
    REQUIRE(r.intervals.size() == 1);
    CHECK(!r.intervals[0].lo);
    CHECK(!r.intervals[0].hi);
  }
  SUBCASE("single jump through zero has a point root") {
    StepFunction sf{rv({"1"}), rv({"-1", "1"})};
    auto r = roots(sf);
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].is_point());
    CHECK(*r.intervals[0].lo == 1);
  }
  SUBCASE("no root") {
    StepFunction sf{rv({"0"}), rv({"1", "3"})};
    CHECK(roots(sf).empty());
  }
}

TEST_CASE("partial subdifferentials") {
  SUBCASE("zero factor with zero point gives {0}") {
    Instance inst = column_instance();  // u = (0, 1), v = (1)
    Point origin{rv({"0", "0"}), rv({"0"})};
    auto s = partial_subdiff_x(inst, origin, 0);
    REQUIRE(s.intervals.size() == 1);
    CHECK(s.intervals[0].is_point());
    CHECK(s.contains(0));

    auto sy = partial_subdiff_y(inst, origin, 0);
    CHECK(sy.intervals[0].is_point());
    CHECK(sy.contains(0));
  }
  SUBCASE("staircase partials contain zero") {
    Instance inst = staircase_instance();
    Point p = staircase_point();
    // sign(u_1) dalpha(x_1/u_1) = -dalpha(-1) = {0}.
    auto s = partial_subdiff_x(inst, p, 0);
    REQUIRE(s.intervals.size() == 1);
    CHECK(s.intervals[0].is_point());
    CHECK(s.contains(0));
    // sign(v_1) dbeta(y_1/v_1) = -dbeta(1): the flipped jump interval.
    auto t = partial_subdiff_y(inst, p, 0);
    REQUIRE(t.intervals.size() == 1);
    CHECK(*t.intervals[0].lo == -4);
    CHECK(*t.intervals[0].hi == 0);
  }
  SUBCASE("global minima have zero in every partial") {
    Instance inst = Instance::from_factors(rv({"2", "-1"}), rv({"1", "1/2"}));
    Point p{rv({"4", "-2"}), rv({"1/2", "1/4"})};  // theta = 2
    REQUIRE(eval_f(inst, p) == 0);
    for (int i = 0; i < inst.m(); ++i) {
      CHECK(partial_subdiff_x(inst, p, i).contains(0));
    }
    for (int j = 0; j < inst.n(); ++j) {
      CHECK(partial_subdiff_y(inst, p, j).contains(0));
    }
  }
  SUBCASE("consistency with step_eval for nonzero factors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const int m = 1 + rng() % 3, n = 1 + rng() % 3;
      RatVec u(m), v(n);
      Point p{RatVec(m), RatVec(n)};
      for (auto& e : u) e = kPool[rng() % kPool.size()];
      for (auto& e : v) e = kPool[rng() % kPool.size()];
      for (auto& e : p.x) e = kPool[rng() % kPool.size()];
      for (auto& e : p.y) e = kPool[rng() % kPool.size()];
      Instance inst = Instance::from_factors(u, v);
      StepFunction alpha = step_alpha(inst, p);
      for (int i = 0; i < m; ++i) {
        if (u[i] == 0) continue;
        auto direct = partial_subdiff_x(inst, p, i);
        auto via = step_eval(alpha, p.x[i] / u[i]);
        if (sgn(u[i]) < 0) {
          std::swap(via.intervals[0].lo, via.intervals[0].hi);
          via.intervals[0].lo = -*via.intervals[0].lo;
          via.intervals[0].hi = -*via.intervals[0].hi;
        }
        CHECK(direct.intervals[0].lo == via.intervals[0].lo);
        CHECK(direct.intervals[0].hi == via.intervals[0].hi);
      }
    }
  }
  SUBCASE("index range is enforced") {
    Instance inst = column_instance();
    Point origin{rv({"0", "0"}), rv({"0"})};
    CHECK_THROWS(partial_subdiff_x(inst, origin, 2));
    CHECK_THROWS(partial_subdiff_y(inst, origin, -1));
  }
}

TEST_CASE("step function monotonicity on random data") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + rng() % 4, n = 1 + rng() % 4;
    RatVec u(m), v(n);
    Point p{RatVec(m), RatVec(n)};
    for (auto& e : u) e = kPool[rng() % kPool.size()];
    for (auto& e : v) e = kPool[rng() % kPool.size()];
    for (auto& e : p.x) e = kPool[rng() % kPool.size()];
    for (auto& e : p.y) e = kPool[rng() % kPool.size()];
    Instance inst = Instance::from_factors(u, v);
    for (const auto& sf : {step_alpha(inst, p), step_beta(inst, p)}) {
      for (std::size_t k = 0; k + 1 < sf.plateau_values.size(); ++k) {
        CHECK(sf.plateau_values[k] <= sf.plateau_values[k + 1]);
      }
      for (std::size_t k = 0; k + 1 < sf.breakpoints.size(); ++k) {
        CHECK(sf.breakpoints[k] < sf.breakpoints[k + 1]);
      }
    }
  }
}

TEST_CASE("directional derivative closed form") {
  SUBCASE("counterexample direction certifies descent") {
    Point d{rv({"0", "1"}), rv({"1", "0"})};
    CHECK(directional_derivative(counterexample_instance(),
                                 counterexample_point(), d) == -2);
  }
  SUBCASE("zero direction") {
    Point d{rv({"0", "0"}), rv({"0", "0"})};
    CHECK(directional_derivative(counterexample_instance(),
                                 counterexample_point(), d) == 0);
  }
  SUBCASE("nonnegative at a global minimum") {
    Instance inst = Instance::from_factors(rv({"2", "-1"}), rv({"1", "1/2"}));
    Point p{rv({"2", "-1"}), rv({"1", "1/2"})};
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      Point d{RatVec(2), RatVec(2)};
      for (auto& e : d.x) e = kPool[rng() % kPool.size()];
      for (auto& e : d.y) e = kPool[rng() % kPool.size()];
      CHECK(directional_derivative(inst, p, d) >= 0);
    }
  }
  SUBCASE("positive homogeneity") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
      Instance inst = Instance::from_factors(
          {kPool[rng() % 7], kPool[rng() % 7]}, {kPool[rng() % 7]});
      Point p{{kPool[rng() % 7], kPool[rng() % 7]}, {kPool[rng() % 7]}};
      Point d{{kPool[rng() % 7], kPool[rng() % 7]}, {kPool[rng() % 7]}};
      const Rational base = directional_derivative(inst, p, d);
      for (const char* c_text : {"2", "1/2", "7"}) {
        const Rational c = parse_rational(c_text);
        Point cd{d.x, d.y};
        for (auto& e : cd.x) e *= c;
        for (auto& e : cd.y) e *= c;
        CHECK(directional_derivative(inst, p, cd) == c * base);
      }
    }
  }
}

TEST_CASE("finite differences validate the directional derivative") {
  std::mt19937_64 rng(23);
  int kinked_paths = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + rng() % 3, n = 1 + rng() % 3;
    RatVec u(m), v(n);
    Point p{RatVec(m), RatVec(n)};
    for (auto& e : u) e = kPool[rng() % kPool.size()];
    for (auto& e : v) e = kPool[rng() % kPool.size()];
    for (auto& e : p.x) e = kPool[rng() % kPool.size()];
    for (auto& e : p.y) e = kPool[rng() % kPool.size()];
    Instance inst = Instance::from_factors(u, v);

    // Single-factor direction: f restricted to the ray is convex piecewise
    // affine, so the secant slope is exact below the first kink and
    // non-increasing as t decreases.
    Point d{RatVec(m), RatVec(n)};
    const bool move_x = rng() % 2 == 0;
    bool nonzero = false;
    for (int tries = 0; !nonzero; ++tries) {
      for (auto& e : (move_x ? d.x : d.y)) {
        e = kPool[rng() % kPool.size()];
        nonzero = nonzero || e != 0;
      }
      REQUIRE(tries < 64);
    }

    const Rational fprime = directional_derivative(inst, p, d);
    const auto gap = first_kink(inst, p, d);
    if (gap) ++kinked_paths;

    Rational t(1, 1);
    for (int k = 0; k <= 24; ++k, t /= 2) {
      const Rational q = quotient(inst, p, d, t);
      if (!gap || t < *gap) {
        CHECK(q == fprime);
      } else {
        CHECK(q >= fprime);
        if (t > *gap) CHECK(q > fprime);
      }
    }
  }
  CHECK(kinked_paths > 50);
}

TEST_CASE("secant slopes of general directions extrapolate exactly") {
  // With both factors moving, the path picks up a quadratic term, so the
  // secant equals f'(p; d) + t C below the first kink. Two nested secants
  // eliminate C exactly.
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + rng() % 3, n = 1 + rng() % 3;
    RatVec u(m), v(n);
    Point p{RatVec(m), RatVec(n)};
    Point d{RatVec(m), RatVec(n)};
    for (auto& e : u) e = kPool[rng() % kPool.size()];
    for (auto& e : v) e = kPool[rng() % kPool.size()];
    for (auto& e : p.x) e = kPool[rng() % kPool.size()];
    for (auto& e : p.y) e = kPool[rng() % kPool.size()];
    for (auto& e : d.x) e = kPool[rng() % kPool.size()];
    for (auto& e : d.y) e = kPool[rng() % kPool.size()];
    Instance inst = Instance::from_factors(u, v);

    const Rational fprime = directional_derivative(inst, p, d);
    Rational t(1, 2);
    bool matched = false;
    for (int k = 0; k < 48 && !matched; ++k, t /= 2) {
      const Rational rich =
          2 * quotient(inst, p, d, t / 2) - quotient(inst, p, d, t);
      if (rich == fprime &&
          2 * quotient(inst, p, d, t / 4) - quotient(inst, p, d, t / 2) ==
              fprime) {
        matched = true;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("zero_in_partials") {
  CHECK(zero_in_partials(counterexample_instance(), counterexample_point()));
  CHECK(zero_in_partials(staircase_instance(), staircase_point()));

  Instance inst = Instance::from_factors(rv({"1"}), rv({"1"}));
  CHECK(!zero_in_partials(inst, Point{rv({"1"}), rv({"2"})}));
}
