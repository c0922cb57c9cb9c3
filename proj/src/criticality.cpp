#include "rank1/criticality.hpp"

#include <utility>

#include "rank1/lp.hpp"

namespace rank1 {

namespace {

RatMat build_sgn_lambda(const Instance& inst) {
  RatMat L(inst.m(), inst.n());
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      L.at(i, j) = -sgn(inst.u()[i] * inst.v()[j]);
    }
  }
  return L;
}

void verify_lambda(const Instance& inst, const Point& p, const RatMat& L,
                   const char* context) {
  RatMat R = residual(inst, p);
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      const Rational& l = L.at(i, j);
      const int s = sgn(R.at(i, j));
      const bool ok = (s == 0) ? (abs(l) <= 1) : (l == s);
      if (!ok) throw InternalError(std::string(context) + ": Lambda outside sign set");
    }
  }
  for (int i = 0; i < inst.m(); ++i) {
    Rational row = 0;
    for (int j = 0; j < inst.n(); ++j) row += L.at(i, j) * p.y[j];
    if (row != 0) throw InternalError(std::string(context) + ": Lambda y != 0");
  }
  for (int j = 0; j < inst.n(); ++j) {
    Rational col = 0;
    for (int i = 0; i < inst.m(); ++i) col += L.at(i, j) * p.x[i];
    if (col != 0) throw InternalError(std::string(context) + ": Lambda^T x != 0");
  }
}

}  // namespace

CriticalityVerdict is_critical_lp(const Instance& inst, const Point& p) {
  check_dims(inst, p);
  const int m = inst.m(), n = inst.n();
  SignMatrix S = sign_matrix(inst, p);

  // Box variables only for the zero-residual entries; +-1 entries fold
  // into the right-hand sides.
  std::vector<int> var_of(m * n, -1);
  int nvars = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (S.at(i, j) == SignValue::FullInterval) var_of[i * n + j] = nvars++;
    }
  }

  BoxLinearSystem sys;
  sys.num_vars = nvars;
  sys.lower.assign(nvars, Rational(-1));
  sys.upper.assign(nvars, Rational(1));

  for (int i = 0; i < m; ++i) {
    LinearEquality eq{RatVec(nvars), 0};
    for (int j = 0; j < n; ++j) {
      const int var = var_of[i * n + j];
      if (var >= 0) {
        eq.coeffs[var] += p.y[j];
      } else {
        const int s = S.at(i, j) == SignValue::PlusOne ? 1 : -1;
        eq.rhs -= Rational(s) * p.y[j];
      }
    }
    sys.equalities.push_back(std::move(eq));
  }
  for (int j = 0; j < n; ++j) {
    LinearEquality eq{RatVec(nvars), 0};
    for (int i = 0; i < m; ++i) {
      const int var = var_of[i * n + j];
      if (var >= 0) {
        eq.coeffs[var] += p.x[i];
      } else {
        const int s = S.at(i, j) == SignValue::PlusOne ? 1 : -1;
        eq.rhs -= Rational(s) * p.x[i];
      }
    }
    sys.equalities.push_back(std::move(eq));
  }

  LpOutcome out = solve_feasibility(sys);
  CriticalityVerdict verdict;
  verdict.method = CritMethod::LambdaLP;
  if (out.status == LpStatus::Infeasible) {
    verdict.is_critical = false;
    return verdict;
  }

  RatMat L(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int var = var_of[i * n + j];
      if (var >= 0) {
        L.at(i, j) = out.witness[var];
      } else {
        L.at(i, j) = S.at(i, j) == SignValue::PlusOne ? 1 : -1;
      }
    }
  }
  verify_lambda(inst, p, L, "is_critical_lp");
  verdict.is_critical = true;
  verdict.lambda_witness = std::move(L);
  return verdict;
}

CriticalityVerdict is_critical_directional(const Instance& inst,
                                           const Point& p) {
  check_dims(inst, p);
  const int m = inst.m(), n = inst.n();
  RatMat R = residual(inst, p);

  // Variables: h (m), k (n) in [-1,1], then a slack pair (s-, s+) >= 0 per
  // zero-residual entry. Writing e_ij = x_i k_j + h_i y_j, the pair obeys
  // s+ - s- = 2 e_ij, and (s- + s+)/2 contributes |e_ij| to the objective
  // at any optimum.
  std::vector<std::pair<int, int>> zeros;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (R.at(i, j) == 0) zeros.emplace_back(i, j);
    }
  }
  const int nz = static_cast<int>(zeros.size());
  const int nvars = m + n + 2 * nz;

  BoxLinearSystem sys;
  sys.num_vars = nvars;
  sys.lower.assign(nvars, std::nullopt);
  sys.upper.assign(nvars, std::nullopt);
  for (int t = 0; t < m + n; ++t) {
    sys.lower[t] = Rational(-1);
    sys.upper[t] = Rational(1);
  }
  for (int t = m + n; t < nvars; ++t) sys.lower[t] = Rational(0);

  RatVec objective(nvars);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int s = sgn(R.at(i, j));
      if (s == 0) continue;
      objective[i] += Rational(s) * p.y[j];
      objective[m + j] += Rational(s) * p.x[i];
    }
  }
  for (int z = 0; z < nz; ++z) {
    objective[m + n + 2 * z] = Rational(1, 2);
    objective[m + n + 2 * z + 1] = Rational(1, 2);
  }

  for (int z = 0; z < nz; ++z) {
    const auto [i, j] = zeros[z];
    LinearEquality eq{RatVec(nvars), 0};
    eq.coeffs[i] = -2 * p.y[j];
    eq.coeffs[m + j] = -2 * p.x[i];
    eq.coeffs[m + n + 2 * z] = 1;       // s-
    eq.coeffs[m + n + 2 * z + 1] = -1;  // s+  (so s+ - s- = 2 e_ij)
    sys.equalities.push_back(std::move(eq));
  }

  LpOutcome out = solve_min(sys, objective);
  if (out.status != LpStatus::Optimal) {
    throw InternalError("directional LP must have a bounded optimum");
  }

  CriticalityVerdict verdict;
  verdict.method = CritMethod::DirectionalLP;
  if (out.objective_value == 0) {
    verdict.is_critical = true;
    return verdict;
  }
  if (out.objective_value > 0) {
    throw InternalError("directional LP minimum cannot be positive");
  }

  Point d;
  d.x.assign(out.witness.begin(), out.witness.begin() + m);
  d.y.assign(out.witness.begin() + m, out.witness.begin() + m + n);
  if (directional_derivative(inst, p, d) != out.objective_value) {
    throw InternalError("directional LP value disagrees with f'(p; d)");
  }
  verdict.is_critical = false;
  verdict.descent_certificate = std::move(d);
  verdict.certificate_derivative = out.objective_value;
  return verdict;
}

SignedSums signed_sums(const Instance& inst, const Point& p) {
  SignedSums s{0, 0, 0, 0};
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.u()[i] != 0) {
      s.signed_x += Rational(sgn(inst.u()[i])) * p.x[i];
    } else {
      s.abs_x_zero_u += abs(p.x[i]);
    }
  }
  for (int j = 0; j < inst.n(); ++j) {
    if (inst.v()[j] != 0) {
      s.signed_y += Rational(sgn(inst.v()[j])) * p.y[j];
    } else {
      s.abs_y_zero_v += abs(p.y[j]);
    }
  }
  return s;
}

bool ratios_at_most_one(const Instance& inst, const Point& p) {
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      const Rational uv = inst.u()[i] * inst.v()[j];
      if (uv == 0) continue;
      const Rational xy = p.x[i] * p.y[j];
      // x_i y_j / (u_i v_j) <= 1, cross-multiplied by the sign of u_i v_j.
      if (uv > 0 ? xy > uv : xy < uv) return false;
    }
  }
  return true;
}

bool zero_pattern_matches(const Instance& inst, const Point& p) {
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.u()[i] == 0 && p.x[i] != 0) return false;
  }
  for (int j = 0; j < inst.n(); ++j) {
    if (inst.v()[j] == 0 && p.y[j] != 0) return false;
  }
  return true;
}

bool condition_26de(const Instance& inst, const Point& p) {
  SignedSums s = signed_sums(inst, p);
  return s.signed_x == 0 && s.signed_y == 0 && zero_pattern_matches(inst, p) &&
         ratios_at_most_one(inst, p);
}

CriticalityVerdict is_critical_closed_form(const Instance& inst,
                                           const Point& p) {
  check_dims(inst, p);
  CriticalityVerdict verdict;
  verdict.method = CritMethod::ClosedForm;

  auto matched = [&](ClosedFormCondition c) {
    verdict.is_critical = true;
    verdict.matched_condition = c;
    return verdict;
  };

  if (eval_f(inst, p) == 0) return matched(ClosedFormCondition::C26a);

  SignedSums s = signed_sums(inst, p);
  if (is_zero(p.y) && abs(s.signed_x) <= s.abs_x_zero_u) {
    return matched(ClosedFormCondition::C26b);
  }
  if (is_zero(p.x) && abs(s.signed_y) <= s.abs_y_zero_v) {
    return matched(ClosedFormCondition::C26c);
  }
  if (condition_26de(inst, p)) return matched(ClosedFormCondition::C26de);

  verdict.is_critical = false;
  return verdict;
}

RatMat witness_lambda(const Instance& inst, const Point& p) {
  check_dims(inst, p);
  // Clause (26d) plus the product consequence of (26e): the construction
  // only needs x_i y_j = 0 wherever u_i v_j = 0 (with all-zero factors,
  // any point with x = 0 or y = 0 qualifies and Lambda is the zero matrix).
  SignedSums s = signed_sums(inst, p);
  bool products_vanish = true;
  for (int i = 0; i < inst.m() && products_vanish; ++i) {
    for (int j = 0; j < inst.n() && products_vanish; ++j) {
      if (inst.u()[i] * inst.v()[j] == 0 && p.x[i] * p.y[j] != 0) {
        products_vanish = false;
      }
    }
  }
  if (s.signed_x != 0 || s.signed_y != 0 || !products_vanish ||
      !ratios_at_most_one(inst, p)) {
    throw PreconditionViolated("witness_lambda requires clause (26d)+(26e)");
  }
  RatMat L = build_sgn_lambda(inst);
  verify_lambda(inst, p, L, "witness_lambda");
  return L;
}

}  // namespace rank1
