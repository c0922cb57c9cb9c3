#pragma once

#include <optional>
#include <vector>

#include "rank1/core.hpp"

namespace rank1 {

/// Set-valued sign of a residual entry: -1, +1, or the interval [-1, 1].
enum class SignValue { MinusOne, PlusOne, FullInterval };

struct SignMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SignValue> entries;  // row-major

  SignValue at(int i, int j) const { return entries[i * cols + j]; }
};

/// Closed interval with optionally infinite endpoints (nullopt = unbounded).
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool contains(const Rational& t) const {
    return (!lo || *lo <= t) && (!hi || t <= *hi);
  }
  bool is_point() const { return lo && hi && *lo == *hi; }
};

/// Sorted list of disjoint nonempty closed intervals.
struct IntervalSet {
  std::vector<Interval> intervals;

  bool contains(const Rational& t) const {
    for (const auto& iv : intervals) {
      if (iv.contains(t)) return true;
    }
    return false;
  }
  bool empty() const { return intervals.empty(); }

  static IntervalSet empty_set() { return {}; }
  static IntervalSet point(Rational t) {
    return IntervalSet{{Interval{t, t}}};
  }
  static IntervalSet closed(Rational a, Rational b) {
    return IntervalSet{{Interval{std::move(a), std::move(b)}}};
  }
  static IntervalSet all() { return IntervalSet{{Interval{}}}; }
};

/// Non-decreasing piecewise-constant set-valued function: plateau values
/// between consecutive breakpoints, closed jump intervals at breakpoints.
struct StepFunction {
  RatVec breakpoints;     // strictly increasing
  RatVec plateau_values;  // size breakpoints.size() + 1, non-decreasing

  Interval jump_at(int k) const {
    return Interval{plateau_values[k], plateau_values[k + 1]};
  }
};

/// Entrywise sign of the residual x y^T - M.
SignMatrix sign_matrix(const Instance& inst, const Point& p);

/// Subdifferential of t -> sum_j |y_j t - v_j| as a step function.
StepFunction step_alpha(const Instance& inst, const Point& p);

/// Subdifferential of t -> sum_i |x_i t - u_i| as a step function.
StepFunction step_beta(const Instance& inst, const Point& p);

/// Set value at t: a plateau as a degenerate interval, or the closed jump
/// interval when t is a breakpoint.
IntervalSet step_eval(const StepFunction& sf, const Rational& t);

/// The exact root set {t : 0 in step_eval(sf, t)}. By monotonicity this is
/// one closed interval (possibly empty, a point, or unbounded).
IntervalSet roots(const StepFunction& sf);

/// Partial Clarke subdifferential in coordinate x_i (0-based index).
IntervalSet partial_subdiff_x(const Instance& inst, const Point& p, int i);

/// Partial Clarke subdifferential in coordinate y_j (0-based index).
IntervalSet partial_subdiff_y(const Instance& inst, const Point& p, int j);

/// One-sided directional derivative f'((x,y); (h,k)).
Rational directional_derivative(const Instance& inst, const Point& p,
                                const Point& d);

/// Necessary condition for criticality: 0 lies in every partial
/// subdifferential. Not sufficient.
bool zero_in_partials(const Instance& inst, const Point& p);

}  // namespace rank1
