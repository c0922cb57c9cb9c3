#pragma once

#include <optional>

#include "rank1/core.hpp"
#include "rank1/subdiff.hpp"

namespace rank1 {

enum class CritMethod { LambdaLP, DirectionalLP, ClosedForm };

/// Which clause of the quantifier-free criticality test matched.
enum class ClosedFormCondition { C26a, C26b, C26c, C26de };

struct CriticalityVerdict {
  bool is_critical = false;
  CritMethod method = CritMethod::ClosedForm;

  // Evidence, populated per method.
  std::optional<RatMat> lambda_witness;             // LambdaLP, critical
  std::optional<Point> descent_certificate;         // DirectionalLP, not critical
  std::optional<Rational> certificate_derivative;   // f'(p; certificate) < 0
  std::optional<ClosedFormCondition> matched_condition;  // ClosedForm, critical
};

/// Decides 0 in df(x,y) by solving the feasibility problem
/// Lambda in sign(x y^T - M), Lambda y = 0, Lambda^T x = 0 exactly.
CriticalityVerdict is_critical_lp(const Instance& inst, const Point& p);

/// Decides criticality by minimizing d -> f'(p; d) over the box
/// ||d||_inf <= 1; the point is critical iff the minimum is zero, and the
/// minimizer is an exact descent certificate otherwise.
CriticalityVerdict is_critical_directional(const Instance& inst,
                                           const Point& p);

/// Quantifier-free criticality test, evaluated cheapest clause first.
CriticalityVerdict is_critical_closed_form(const Instance& inst,
                                           const Point& p);

/// The constructive multiplier Lambda = -sgn(u v^T). Requires the
/// closed-form clause (26d)+(26e); the returned matrix is verified exactly
/// against all three witness conditions before returning.
RatMat witness_lambda(const Instance& inst, const Point& p);

/// Shared clause arithmetic (also used by the classifier).
struct SignedSums {
  Rational signed_x;      // sum over u_i != 0 of sign(u_i) x_i
  Rational abs_x_zero_u;  // sum over u_i == 0 of |x_i|
  Rational signed_y;      // sum over v_j != 0 of sign(v_j) y_j
  Rational abs_y_zero_v;  // sum over v_j == 0 of |y_j|
};

SignedSums signed_sums(const Instance& inst, const Point& p);

/// x_i y_j / (u_i v_j) <= 1 wherever u_i v_j != 0, via cross-multiplication.
bool ratios_at_most_one(const Instance& inst, const Point& p);

/// x_i = 0 wherever u_i = 0, and y_j = 0 wherever v_j = 0.
bool zero_pattern_matches(const Instance& inst, const Point& p);

/// The combined clause (26d)+(26e).
bool condition_26de(const Instance& inst, const Point& p);

}  // namespace rank1
