#pragma once

#include <optional>
#include <vector>

#include "rank1/core.hpp"

namespace rank1 {

struct LinearEquality {
  RatVec coeffs;  // length num_vars
  Rational rhs;
};

/// Equality constraints plus per-variable box bounds; an absent bound is
/// -inf / +inf. This is the only constraint shape the analyses need.
struct BoxLinearSystem {
  int num_vars = 0;
  std::vector<LinearEquality> equalities;
  std::vector<std::optional<Rational>> lower;  // size num_vars
  std::vector<std::optional<Rational>> upper;  // size num_vars

  void validate() const;  // throws MalformedSystem
};

enum class LpStatus { Feasible, Infeasible, Optimal, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  RatVec witness;            // present for Feasible / Optimal
  Rational objective_value;  // present for Optimal
};

/// Exact phase-one simplex with Bland's smallest-index rule. Returns a
/// Feasible outcome with an exact witness, or Infeasible. No tolerances.
LpOutcome solve_feasibility(const BoxLinearSystem& sys);

/// Exact two-phase simplex minimizing objective . x over the system.
LpOutcome solve_min(const BoxLinearSystem& sys, const RatVec& objective);

}  // namespace rank1
