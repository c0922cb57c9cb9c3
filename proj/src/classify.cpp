#include "rank1/classify.hpp"

#include <random>
#include <utility>

namespace rank1 {

Point point_axpy(const Point& p, const Rational& t, const Point& d) {
  Point q = p;
  for (std::size_t i = 0; i < q.x.size(); ++i) q.x[i] += t * d.x[i];
  for (std::size_t j = 0; j < q.y.size(); ++j) q.y[j] += t * d.y[j];
  return q;
}

Classification classify_point_given(const Instance& inst, const Point& p,
                                    bool is_critical) {
  check_dims(inst, p);
  Classification c;
  c.f_value = eval_f(inst, p);
  if (!is_critical) {
    c.kind = PointKind::NotCritical;
    return c;
  }

  if (c.f_value == 0) {
    c.kind = PointKind::GlobalMin;
    c.condition = MatchedCondition::C28;
    if (!is_zero(inst.u()) && !is_zero(inst.v())) {
      int i0 = 0;
      while (inst.u()[i0] == 0) ++i0;
      Rational theta = p.x[i0] / inst.u()[i0];
      for (int i = 0; i < inst.m(); ++i) {
        if (p.x[i] != theta * inst.u()[i]) {
          throw InternalError("global minimum is not a factor scaling");
        }
      }
      for (int j = 0; j < inst.n(); ++j) {
        if (p.y[j] * theta != inst.v()[j]) {
          throw InternalError("global minimum is not a factor scaling");
        }
      }
      c.theta = std::move(theta);
    }
    return c;
  }

  SignedSums s = signed_sums(inst, p);
  if (is_zero(p.y)) {
    const Rational a = abs(s.signed_x);
    if (a < s.abs_x_zero_u) {
      c.kind = PointKind::SpuriousLocalMin;
      c.condition = MatchedCondition::C29a;
    } else if (a == s.abs_x_zero_u) {
      c.kind = PointKind::Saddle;
      c.condition = MatchedCondition::C30a;
    } else {
      throw InternalError("critical point with y = 0 escapes clause (26b)");
    }
    return c;
  }
  if (is_zero(p.x)) {
    const Rational a = abs(s.signed_y);
    if (a < s.abs_y_zero_v) {
      c.kind = PointKind::SpuriousLocalMin;
      c.condition = MatchedCondition::C29b;
    } else if (a == s.abs_y_zero_v) {
      c.kind = PointKind::Saddle;
      c.condition = MatchedCondition::C30b;
    } else {
      throw InternalError("critical point with x = 0 escapes clause (26c)");
    }
    return c;
  }
  if (!condition_26de(inst, p)) {
    throw InternalError("critical point escapes every classification clause");
  }
  c.kind = PointKind::Saddle;
  c.condition = MatchedCondition::C30cd;
  return c;
}

Classification classify_point(const Instance& inst, const Point& p) {
  const bool lp = is_critical_lp(inst, p).is_critical;
  const bool dir = is_critical_directional(inst, p).is_critical;
  const bool cf = is_critical_closed_form(inst, p).is_critical;
  if (lp != dir || dir != cf) {
    throw InternalError("criticality deciders disagree");
  }
  return classify_point_given(inst, p, lp);
}

DescentPlan descent_direction(const Instance& inst, const Point& p) {
  Classification c = classify_point(inst, p);
  if (c.kind != PointKind::Saddle) {
    throw PreconditionViolated("descent_direction requires a saddle point");
  }
  if (is_zero(inst.u()) || is_zero(inst.v())) {
    throw PreconditionViolated("descent construction needs u != 0 and v != 0");
  }

  SignedSums s = signed_sums(inst, p);
  Rational theta;
  if (c.condition == MatchedCondition::C30a && s.signed_x != 0) {
    theta = sgn(s.signed_x);
  } else if (c.condition == MatchedCondition::C30b && s.signed_y != 0) {
    theta = sgn(s.signed_y);
  } else {
    // Clause (30c)-(30d): all binding ratios x_i/u_i of one sign coincide.
    // Prefer the positive side when both exist; with none, any theta works.
    std::optional<Rational> pos, neg;
    for (int i = 0; i < inst.m(); ++i) {
      for (int j = 0; j < inst.n(); ++j) {
        const Rational uv = inst.u()[i] * inst.v()[j];
        if (uv == 0 || p.x[i] * p.y[j] != uv) continue;
        Rational r = p.x[i] / inst.u()[i];
        auto& slot = (r > 0) ? pos : neg;
        if (slot && *slot != r) {
          throw InternalError("binding ratios of one sign must coincide");
        }
        slot = std::move(r);
      }
    }
    theta = pos ? *pos : (neg ? *neg : Rational(1));
  }

  Point dir;
  dir.x.resize(inst.m());
  dir.y.resize(inst.n());
  for (int i = 0; i < inst.m(); ++i) dir.x[i] = inst.u()[i] * theta - p.x[i];
  for (int j = 0; j < inst.n(); ++j) dir.y[j] = inst.v()[j] / theta - p.y[j];

  const Rational f0 = eval_f(inst, p);
  auto identity_holds = [&](const Rational& t) {
    return eval_f(inst, point_axpy(p, t, dir)) == (1 - t * t) * f0;
  };

  Rational t(1, 2);
  for (int iter = 0; iter < 256; ++iter) {
    if (identity_holds(t) && identity_holds(t / 2)) {
      return DescentPlan{std::move(theta), std::move(dir), std::move(t)};
    }
    t /= 2;
  }
  throw InternalError("descent step bound search did not terminate");
}

bool verify_descent(const Instance& inst, const Point& p,
                    const DescentPlan& plan, const Rational& t) {
  return eval_f(inst, point_axpy(p, t, plan.direction)) ==
         (1 - t * t) * eval_f(inst, p);
}

std::optional<Point> spurious_witness(const Instance& inst) {
  if (is_zero(inst.u()) || is_zero(inst.v())) return std::nullopt;  // M = 0
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.u()[i] == 0) {
      Point p{RatVec(inst.m()), RatVec(inst.n())};
      p.x[i] = 1;
      return p;
    }
  }
  for (int j = 0; j < inst.n(); ++j) {
    if (inst.v()[j] == 0) {
      Point p{RatVec(inst.m()), RatVec(inst.n())};
      p.y[j] = 1;
      return p;
    }
  }
  return std::nullopt;
}

bool theorem1_predicate(const RatMat& M) {
  factor_rank_one(M);  // validates rank(M) <= 1
  bool any_zero = false, any_nonzero = false;
  for (const auto& e : M.data()) {
    (e == 0 ? any_zero : any_nonzero) = true;
  }
  return !(any_zero && any_nonzero);
}

namespace {

// Probe for the y = 0 spurious clause; the x = 0 clause is handled by
// transposing the problem first.
SpuriousProbeResult probe_y_side(const Instance& inst, const Point& p,
                                 const SpuriousProbeConfig& cfg,
                                 const Rational& rho) {
  const int m = inst.m(), n = inst.n();
  SignedSums s = signed_sums(inst, p);
  const Rational slack = s.abs_x_zero_u - abs(s.signed_x);
  const Rational f0 = eval_f(inst, p);

  std::mt19937_64 rng(cfg.seed);
  const int L = cfg.lattice;
  auto draw = [&]() {
    const int z = static_cast<int>(rng() % (2 * L + 1)) - L;
    return rho * z / L;
  };

  SpuriousProbeResult res;
  res.samples = cfg.samples;
  for (int sample = 0; sample < cfg.samples; ++sample) {
    RatVec h(m), k(n);
    for (auto& e : h) e = draw();
    for (auto& e : k) e = draw();

    Point q{p.x, k};  // p.y == 0, so the perturbed point is (x + h, k)
    for (int i = 0; i < m; ++i) q.x[i] += h[i];
    const Rational f1 = eval_f(inst, q);
    if (f1 < f0) ++res.decreases;

    bool premise = true;
    for (int i = 0; i < m && premise; ++i) {
      for (int j = 0; j < n && premise; ++j) {
        const Rational uv = inst.u()[i] * inst.v()[j];
        if (uv != 0 && abs(q.x[i] * k[j]) > abs(uv)) premise = false;
      }
    }
    if (!premise) {
      ++res.premise_failures;
      continue;
    }

    Rational perturbed_signed = 0, perturbed_zero_abs = 0, k_weight = 0;
    for (int i = 0; i < m; ++i) {
      if (inst.u()[i] != 0) {
        perturbed_signed += Rational(sgn(inst.u()[i])) * q.x[i];
      } else {
        perturbed_zero_abs += abs(q.x[i]);
      }
    }
    for (int j = 0; j < n; ++j) {
      if (inst.v()[j] != 0) k_weight += abs(k[j]);
    }
    const Rational perturbed_slack = perturbed_zero_abs - abs(perturbed_signed);
    if (f1 < f0 + k_weight * perturbed_slack) ++res.bound_failures;

    if (2 * perturbed_slack >= slack) {
      ++res.half_bound_applicable;
      if (f1 < f0 + k_weight * slack / 2) ++res.half_bound_failures;
    }
  }
  return res;
}

Instance transposed(const Instance& inst) {
  return Instance::from_factors(inst.v(), inst.u());
}

}  // namespace

Rational spurious_probe_radius(const Instance& inst, const Point& p) {
  SignedSums s = signed_sums(inst, p);
  const bool y_side = is_zero(p.y) && abs(s.signed_x) < s.abs_x_zero_u;
  const bool x_side = is_zero(p.x) && abs(s.signed_y) < s.abs_y_zero_v;
  if (!y_side && !x_side) {
    throw PreconditionViolated("probe radius needs a spurious local minimum");
  }
  if (!y_side) return spurious_probe_radius(transposed(inst), Point{p.y, p.x});

  std::optional<Rational> least;
  auto consider = [&](const Rational& value) {
    if (value == 0) return;
    Rational a = abs(value);
    if (!least || a < *least) least = std::move(a);
  };
  for (const auto& xi : p.x) consider(xi);
  consider(s.abs_x_zero_u - abs(s.signed_x));
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) consider(inst.u()[i] * inst.v()[j]);
  }
  if (!least) throw InternalError("probe radius has no nonzero quantities");
  return *least / 4;
}

SpuriousProbeResult spurious_probe(const Instance& inst, const Point& p,
                                   const SpuriousProbeConfig& cfg) {
  SignedSums s = signed_sums(inst, p);
  const bool y_side = is_zero(p.y) && abs(s.signed_x) < s.abs_x_zero_u;
  const bool x_side = is_zero(p.x) && abs(s.signed_y) < s.abs_y_zero_v;
  if (!y_side && !x_side) {
    throw PreconditionViolated("spurious_probe requires a spurious local minimum");
  }
  if (y_side) {
    return probe_y_side(inst, p, cfg, spurious_probe_radius(inst, p));
  }
  Instance t = transposed(inst);
  Point q{p.y, p.x};
  return probe_y_side(t, q, cfg, spurious_probe_radius(t, q));
}

}  // namespace rank1
