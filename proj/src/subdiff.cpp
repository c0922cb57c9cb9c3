#include "rank1/subdiff.hpp"

#include <algorithm>

namespace rank1 {

SignMatrix sign_matrix(const Instance& inst, const Point& p) {
  RatMat R = residual(inst, p);
  SignMatrix S{R.rows(), R.cols(), {}};
  S.entries.reserve(R.rows() * R.cols());
  for (int i = 0; i < R.rows(); ++i) {
    for (int j = 0; j < R.cols(); ++j) {
      switch (sgn(R.at(i, j))) {
        case -1: S.entries.push_back(SignValue::MinusOne); break;
        case 1: S.entries.push_back(SignValue::PlusOne); break;
        default: S.entries.push_back(SignValue::FullInterval); break;
      }
    }
  }
  return S;
}

namespace {

// d/dt of sum_j |w_j t - o_j|: breakpoints at o_j / w_j for w_j != 0,
// plateau values evaluated at explicit rational midpoints (min-1 below,
// max+1 above).
StepFunction make_step(const RatVec& w, const RatVec& o) {
  StepFunction sf;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 0) sf.breakpoints.push_back(o[j] / w[j]);
  }
  std::sort(sf.breakpoints.begin(), sf.breakpoints.end());
  sf.breakpoints.erase(
      std::unique(sf.breakpoints.begin(), sf.breakpoints.end()),
      sf.breakpoints.end());

  auto value_at = [&](const Rational& t) {
    Rational s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] != 0) s += Rational(sgn(w[j] * t - o[j])) * w[j];
    }
    return s;
  };

  if (sf.breakpoints.empty()) {
    sf.plateau_values.push_back(0);
    return sf;
  }
  sf.plateau_values.push_back(value_at(sf.breakpoints.front() - 1));
  for (std::size_t k = 0; k + 1 < sf.breakpoints.size(); ++k) {
    sf.plateau_values.push_back(
        value_at((sf.breakpoints[k] + sf.breakpoints[k + 1]) / 2));
  }
  sf.plateau_values.push_back(value_at(sf.breakpoints.back() + 1));
  return sf;
}

IntervalSet scale_by_sign(const IntervalSet& s, int sign) {
  if (sign >= 0) return s;
  IntervalSet out;
  for (auto it = s.intervals.rbegin(); it != s.intervals.rend(); ++it) {
    Interval flipped;
    if (it->hi) flipped.lo = -*it->hi;
    if (it->lo) flipped.hi = -*it->lo;
    out.intervals.push_back(std::move(flipped));
  }
  return out;
}

}  // namespace

StepFunction step_alpha(const Instance& inst, const Point& p) {
  check_dims(inst, p);
  return make_step(p.y, inst.v());
}

StepFunction step_beta(const Instance& inst, const Point& p) {
  check_dims(inst, p);
  return make_step(p.x, inst.u());
}

IntervalSet step_eval(const StepFunction& sf, const Rational& t) {
  const auto& bp = sf.breakpoints;
  auto it = std::lower_bound(bp.begin(), bp.end(), t);
  if (it != bp.end() && *it == t) {
    const int k = static_cast<int>(it - bp.begin());
    return IntervalSet::closed(sf.plateau_values[k], sf.plateau_values[k + 1]);
  }
  const int region = static_cast<int>(it - bp.begin());
  return IntervalSet::point(sf.plateau_values[region]);
}

IntervalSet roots(const StepFunction& sf) {
  const auto& bp = sf.breakpoints;
  const auto& pv = sf.plateau_values;

  // Root pieces in increasing order: the closure of each zero plateau
  // region, and each breakpoint whose jump interval straddles zero. By
  // monotonicity these merge into a single closed interval.
  bool found = false;
  std::optional<Rational> lo, hi;
  bool lo_unbounded = false, hi_unbounded = false;

  auto add_piece = [&](const std::optional<Rational>& a,
                       const std::optional<Rational>& b) {
    if (!found) {
      lo = a;
      hi = b;
      lo_unbounded = !a;
      hi_unbounded = !b;
      found = true;
      return;
    }
    if (!a) lo_unbounded = true;
    if (!b) hi_unbounded = true;
    if (a && !lo_unbounded && *a < *lo) lo = a;
    if (b && !hi_unbounded && (hi && *b > *hi)) hi = b;
  };

  for (std::size_t k = 0; k < pv.size(); ++k) {
    if (pv[k] == 0) {
      std::optional<Rational> a =
          (k == 0) ? std::nullopt : std::optional<Rational>(bp[k - 1]);
      std::optional<Rational> b =
          (k == bp.size()) ? std::nullopt : std::optional<Rational>(bp[k]);
      add_piece(a, b);
    }
    if (k < bp.size() && pv[k] <= 0 && 0 <= pv[k + 1]) {
      add_piece(bp[k], bp[k]);
    }
  }
  if (!found) return IntervalSet::empty_set();
  Interval iv;
  if (!lo_unbounded) iv.lo = lo;
  if (!hi_unbounded) iv.hi = hi;
  return IntervalSet{{iv}};
}

IntervalSet partial_subdiff_x(const Instance& inst, const Point& p, int i) {
  check_dims(inst, p);
  if (i < 0 || i >= inst.m()) throw PreconditionViolated("index out of range");
  const Rational& ui = inst.u()[i];
  if (ui != 0) {
    return scale_by_sign(step_eval(step_alpha(inst, p), p.x[i] / ui), sgn(ui));
  }
  const Rational ny = l1_norm(p.y);
  const int sx = sgn(p.x[i]);
  if (sx == 0) return IntervalSet::closed(-ny, ny);
  return IntervalSet::point(Rational(sx) * ny);
}

IntervalSet partial_subdiff_y(const Instance& inst, const Point& p, int j) {
  check_dims(inst, p);
  if (j < 0 || j >= inst.n()) throw PreconditionViolated("index out of range");
  const Rational& vj = inst.v()[j];
  if (vj != 0) {
    return scale_by_sign(step_eval(step_beta(inst, p), p.y[j] / vj), sgn(vj));
  }
  const Rational nx = l1_norm(p.x);
  const int sy = sgn(p.y[j]);
  if (sy == 0) return IntervalSet::closed(-nx, nx);
  return IntervalSet::point(Rational(sy) * nx);
}

Rational directional_derivative(const Instance& inst, const Point& p,
                                const Point& d) {
  check_dims(inst, p);
  check_dims(inst, d);
  RatMat R = residual(inst, p);
  Rational out = 0;
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      Rational e = p.x[i] * d.y[j] + d.x[i] * p.y[j];
      const int s = sgn(R.at(i, j));
      out += (s == 0) ? abs(e) : Rational(s) * e;
    }
  }
  return out;
}

bool zero_in_partials(const Instance& inst, const Point& p) {
  for (int i = 0; i < inst.m(); ++i) {
    if (!partial_subdiff_x(inst, p, i).contains(0)) return false;
  }
  for (int j = 0; j < inst.n(); ++j) {
    if (!partial_subdiff_y(inst, p, j).contains(0)) return false;
  }
  return true;
}

}  // namespace rank1
