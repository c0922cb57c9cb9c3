#include "rank1/landscape.hpp"

#include <cmath>
#include <random>

#include "rank1/subdiff.hpp"

namespace rank1 {

namespace {

void check_dims_float(const Instance& inst, const FloatPoint& p) {
  if (static_cast<int>(p.x.size()) != inst.m() ||
      static_cast<int>(p.y.size()) != inst.n()) {
    throw DimensionMismatch("float point does not match instance dimensions");
  }
}

double sgnf(double t) { return t < 0 ? -1.0 : (t > 0 ? 1.0 : 0.0); }

}  // namespace

double eval_f_float(const Instance& inst, const FloatPoint& p) {
  check_dims_float(inst, p);
  double s = 0;
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      s += std::abs(p.x[i] * p.y[j] - to_double(inst.M().at(i, j)));
    }
  }
  return s;
}

double eval_fp(const Instance& inst, const FloatPoint& p, double power) {
  check_dims_float(inst, p);
  if (!(power > 1)) throw PreconditionViolated("eval_fp requires power > 1");
  double s = 0;
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      s += std::pow(std::abs(p.x[i] * p.y[j] - to_double(inst.M().at(i, j))),
                    power);
    }
  }
  return s;
}

FloatPoint subgradient_step(const Instance& inst, const FloatPoint& p,
                            double step) {
  check_dims_float(inst, p);
  if (!(step > 0)) throw PreconditionViolated("step must be positive");
  const int m = inst.m(), n = inst.n();
  std::vector<double> gx(m, 0.0), gy(n, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double lam =
          sgnf(p.x[i] * p.y[j] - to_double(inst.M().at(i, j)));
      gx[i] += lam * p.y[j];
      gy[j] += lam * p.x[i];
    }
  }
  FloatPoint next = p;
  for (int i = 0; i < m; ++i) next.x[i] -= step * gx[i];
  for (int j = 0; j < n; ++j) next.y[j] -= step * gy[j];
  return next;
}

Rational snap_to_rational(double value, const BigInt& max_den) {
  if (!std::isfinite(value)) {
    throw PreconditionViolated("cannot snap a non-finite value");
  }
  if (max_den < 1) {
    throw PreconditionViolated("snap denominator cap must be positive");
  }
  const Rational target(value);  // exact binary rational
  if (den(target) <= max_den) return target;

  // Continued-fraction convergents of |target|, with a final
  // semiconvergent when the next convergent overshoots the cap.
  BigInt p0 = 0, q0 = 1;  // previous convergent
  BigInt p1 = 1, q1 = 0;  // current convergent
  BigInt a = abs(num(target)), b = den(target);
  Rational best;
  for (;;) {
    const BigInt digit = a / b;
    BigInt p2 = digit * p1 + p0;
    BigInt q2 = digit * q1 + q0;
    if (q2 > max_den) {
      const BigInt take = (max_den - q0) / q1;
      const Rational conv(p1, q1);
      if (take > 0) {
        const Rational semi(take * p1 + p0, take * q1 + q0);
        const Rational t = abs(target);
        best = (abs(t - semi) < abs(t - conv)) ? semi : conv;
      } else {
        best = conv;
      }
      break;
    }
    const BigInt r = a - digit * b;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (r == 0) {
      best = Rational(p1, q1);
      break;
    }
    a = b;
    b = r;
  }
  return value < 0 ? -best : best;
}

Point snap_point(const FloatPoint& p, const BigInt& max_den) {
  Point q;
  q.x.reserve(p.x.size());
  q.y.reserve(p.y.size());
  for (double xv : p.x) q.x.push_back(snap_to_rational(xv, max_den));
  for (double yv : p.y) q.y.push_back(snap_to_rational(yv, max_den));
  return q;
}

DescentTrace run_descent(const Instance& inst, const FloatPoint& init,
                         const DescentOptions& opts) {
  check_dims_float(inst, init);
  if (opts.max_iters <= 0) {
    throw PreconditionViolated("run_descent requires max_iters > 0");
  }
  const int every = opts.record_every > 0 ? opts.record_every : 1;

  DescentTrace trace;
  trace.schedule = opts.schedule;
  FloatPoint cur = init;
  trace.iterates.push_back(cur);
  trace.f_values.push_back(eval_f_float(inst, cur));
  for (int k = 1; k <= opts.max_iters; ++k) {
    const double step = opts.schedule.kind == StepSchedule::Kind::Diminishing
                            ? opts.schedule.c / k
                            : opts.schedule.c;
    cur = subgradient_step(inst, cur, step);
    if (k % every == 0 || k == opts.max_iters) {
      trace.iterates.push_back(cur);
      trace.f_values.push_back(eval_f_float(inst, cur));
    }
  }

  // A bad snap can only yield NotCritical, never a wrong class: the
  // snapped point is re-verified by the exact classifier.
  Point primary = snap_point(cur, BigInt(opts.snap_denominator));
  Classification cls = classify_point(inst, primary);
  if (cls.kind == PointKind::NotCritical) {
    Point coarse = snap_point(cur, BigInt(opts.snap_denominator_fallback));
    Classification cls2 = classify_point(inst, coarse);
    if (cls2.kind != PointKind::NotCritical) {
      trace.snapped_terminal = std::move(coarse);
      trace.terminal_classification = std::move(cls2);
      return trace;
    }
  }
  trace.snapped_terminal = std::move(primary);
  trace.terminal_classification = std::move(cls);
  return trace;
}

GridSample grid_sample(const Instance& inst, const GridSpec& spec) {
  if (spec.axes.size() != 2 && spec.axes.size() != 3) {
    throw PreconditionViolated("grid_sample needs 2 or 3 axes");
  }
  if (spec.resolution <= 0) throw Error("grid_sample: empty range");
  check_dims_float(inst, spec.base);
  for (const auto& ax : spec.axes) {
    if (ax.lo > ax.hi) throw Error("grid_sample: empty range");
    const int limit = ax.on_x ? inst.m() : inst.n();
    if (ax.index < 0 || ax.index >= limit) {
      throw PreconditionViolated("grid_sample: axis index out of range");
    }
  }

  GridSample out;
  out.spec = spec;
  for (const auto& ax : spec.axes) {
    std::vector<double> vals(spec.resolution);
    for (int i = 0; i < spec.resolution; ++i) {
      vals[i] = spec.resolution == 1
                    ? ax.lo
                    : ax.lo + (ax.hi - ax.lo) * i / (spec.resolution - 1);
    }
    out.axis_values.push_back(std::move(vals));
  }

  const int dims = static_cast<int>(spec.axes.size());
  std::vector<int> idx(dims, 0);
  FloatPoint p = spec.base;
  for (;;) {
    for (int d = 0; d < dims; ++d) {
      const auto& ax = spec.axes[d];
      (ax.on_x ? p.x[ax.index] : p.y[ax.index]) = out.axis_values[d][idx[d]];
    }
    out.values.push_back(eval_f_float(inst, p));
    int d = dims - 1;
    while (d >= 0 && ++idx[d] == spec.resolution) idx[d--] = 0;
    if (d < 0) break;
  }
  return out;
}

const std::vector<Rational>& default_value_pool() {
  static const std::vector<Rational> pool = {
      Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
      Rational(1, 2), Rational(1), Rational(2)};
  return pool;
}

FuzzReport fuzz_equivalence(const FuzzConfig& cfg) {
  if (cfg.num_instances < 0 || cfg.points_per_instance < 0 ||
      cfg.m_max < 1 || cfg.m_max > 4 || cfg.n_max < 1 || cfg.n_max > 4) {
    throw PreconditionViolated("fuzz config outside desk scale");
  }
  const auto& pool =
      cfg.value_pool.empty() ? default_value_pool() : cfg.value_pool;

  std::mt19937_64 rng(cfg.seed);
  auto pick = [&]() { return pool[rng() % pool.size()]; };

  FuzzReport report;
  for (int it = 0; it < cfg.num_instances; ++it) {
    const int m = 1 + static_cast<int>(rng() % cfg.m_max);
    const int n = 1 + static_cast<int>(rng() % cfg.n_max);
    RatVec u(m), v(n);
    for (auto& e : u) e = pick();
    for (auto& e : v) e = pick();
    Instance inst = Instance::from_factors(u, v);
    ++report.instances_tested;

    for (int pt = 0; pt < cfg.points_per_instance; ++pt) {
      Point p{RatVec(m), RatVec(n)};
      for (auto& e : p.x) e = pick();
      for (auto& e : p.y) e = pick();
      const std::uint64_t probe_seed = rng();
      ++report.points_tested;

      FuzzCase where{u, v, p.x, p.y};
      const bool lp = is_critical_lp(inst, p).is_critical;
      const bool dir = is_critical_directional(inst, p).is_critical;
      const bool cf = is_critical_closed_form(inst, p).is_critical;
      if (lp != dir || dir != cf) {
        report.disagreements.push_back(FuzzDisagreement{where, lp, dir, cf});
        continue;
      }

      Classification cls = classify_point_given(inst, p, lp);
      auto violate = [&](const char* prop) {
        report.classification_violations.push_back(FuzzViolation{where, prop});
      };

      if ((cls.kind == PointKind::GlobalMin) != (cls.f_value == 0)) {
        violate("global_min_iff_f_zero");
      }
      if (lp && cls.f_value > 0) {
        if (!step_eval(step_alpha(inst, p), 0).contains(0) ||
            !step_eval(step_beta(inst, p), 0).contains(0)) {
          violate("critical_point_roots_at_origin");
        }
      }
      if (cls.kind == PointKind::Saddle) {
        try {
          DescentPlan plan = descent_direction(inst, p);
          if (!verify_descent(inst, p, plan, plan.valid_step_bound) ||
              !verify_descent(inst, p, plan, plan.valid_step_bound / 2)) {
            violate("saddle_descent_identity");
          }
        } catch (const Error&) {
          violate("saddle_descent_construction");
        }
      }
      if (cls.kind == PointKind::SpuriousLocalMin) {
        SpuriousProbeConfig pc;
        pc.samples = cfg.probe_samples;
        pc.seed = probe_seed;
        SpuriousProbeResult pr = spurious_probe(inst, p, pc);
        if (pr.decreases > 0) violate("spurious_probe_decrease");
        if (pr.bound_failures > 0) violate("spurious_probe_bound");
        if (theorem1_predicate(inst.M())) violate("spurious_needs_mixed_zeros");
      }
    }
  }
  return report;
}

}  // namespace rank1
