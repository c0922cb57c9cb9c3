#include "rank1/lp.hpp"

#include <algorithm>
#include <utility>

namespace rank1 {

void BoxLinearSystem::validate() const {
  if (num_vars < 0) throw MalformedSystem("negative variable count");
  if (static_cast<int>(lower.size()) != num_vars ||
      static_cast<int>(upper.size()) != num_vars) {
    throw MalformedSystem("bound vectors do not match variable count");
  }
  for (int i = 0; i < num_vars; ++i) {
    if (lower[i] && upper[i] && *lower[i] > *upper[i]) {
      throw MalformedSystem("crossed bounds");
    }
  }
  for (const auto& eq : equalities) {
    if (static_cast<int>(eq.coeffs.size()) != num_vars) {
      throw MalformedSystem("equality row has wrong length");
    }
  }
}

namespace {

// Standard form: minimize cost . z subject to A z = b, z >= 0, obtained by
// shifting bounded variables and splitting free ones.
struct Standardized {
  std::vector<RatVec> rows;
  RatVec rhs;
  int num_cols = 0;

  struct VarMap {
    enum Kind { Fixed, ShiftLower, ShiftUpper, Split } kind = Fixed;
    int col = -1;       // primary column
    int col_neg = -1;   // negative part for Split
    Rational base;      // constant offset (Fixed value / shifted bound)
  };
  std::vector<VarMap> map;

  RatVec original_values(const RatVec& z) const {
    RatVec x(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
      const auto& vm = map[i];
      switch (vm.kind) {
        case VarMap::Fixed: x[i] = vm.base; break;
        case VarMap::ShiftLower: x[i] = vm.base + z[vm.col]; break;
        case VarMap::ShiftUpper: x[i] = vm.base - z[vm.col]; break;
        case VarMap::Split: x[i] = z[vm.col] - z[vm.col_neg]; break;
      }
    }
    return x;
  }
};

Standardized standardize(const BoxLinearSystem& sys) {
  Standardized st;
  st.map.resize(sys.num_vars);

  std::vector<std::pair<int, Rational>> ranged;  // (var, upper - lower)
  for (int i = 0; i < sys.num_vars; ++i) {
    auto& vm = st.map[i];
    const auto& lo = sys.lower[i];
    const auto& hi = sys.upper[i];
    if (lo && hi) {
      if (*lo == *hi) {
        vm.kind = Standardized::VarMap::Fixed;
        vm.base = *lo;
      } else {
        vm.kind = Standardized::VarMap::ShiftLower;
        vm.base = *lo;
        vm.col = st.num_cols++;
        ranged.emplace_back(i, *hi - *lo);
      }
    } else if (lo) {
      vm.kind = Standardized::VarMap::ShiftLower;
      vm.base = *lo;
      vm.col = st.num_cols++;
    } else if (hi) {
      vm.kind = Standardized::VarMap::ShiftUpper;
      vm.base = *hi;
      vm.col = st.num_cols++;
    } else {
      vm.kind = Standardized::VarMap::Split;
      vm.col = st.num_cols++;
      vm.col_neg = st.num_cols++;
    }
  }
  std::vector<int> range_slack(ranged.size());
  for (std::size_t r = 0; r < ranged.size(); ++r) range_slack[r] = st.num_cols++;

  for (const auto& eq : sys.equalities) {
    RatVec row(st.num_cols);
    Rational rhs = eq.rhs;
    for (int i = 0; i < sys.num_vars; ++i) {
      const Rational& a = eq.coeffs[i];
      if (a == 0) continue;
      const auto& vm = st.map[i];
      switch (vm.kind) {
        case Standardized::VarMap::Fixed:
          rhs -= a * vm.base;
          break;
        case Standardized::VarMap::ShiftLower:
          row[vm.col] += a;
          rhs -= a * vm.base;
          break;
        case Standardized::VarMap::ShiftUpper:
          row[vm.col] -= a;
          rhs -= a * vm.base;
          break;
        case Standardized::VarMap::Split:
          row[vm.col] += a;
          row[vm.col_neg] -= a;
          break;
      }
    }
    st.rows.push_back(std::move(row));
    st.rhs.push_back(std::move(rhs));
  }
  for (std::size_t r = 0; r < ranged.size(); ++r) {
    RatVec row(st.num_cols);
    row[st.map[ranged[r].first].col] = 1;
    row[range_slack[r]] = 1;
    st.rows.push_back(std::move(row));
    st.rhs.push_back(ranged[r].second);
  }
  return st;
}

// Full-tableau simplex with Bland's smallest-index pivoting. Reduced costs
// are recomputed from scratch each iteration; with exact arithmetic the
// simplicity is worth more than the speed at these sizes.
class Simplex {
 public:
  Simplex(std::vector<RatVec> rows, RatVec rhs, int structural_cols)
      : A_(std::move(rows)), b_(std::move(rhs)), n_(structural_cols) {
    const int m = static_cast<int>(A_.size());
    for (int i = 0; i < m; ++i) {
      if (b_[i] < 0) {
        for (auto& a : A_[i]) a = -a;
        b_[i] = -b_[i];
      }
    }
    // One artificial column per row, initially basic.
    basis_.resize(m);
    for (int i = 0; i < m; ++i) {
      for (int r = 0; r < m; ++r) A_[r].push_back(r == i ? 1 : 0);
      basis_[i] = n_ + i;
    }
    total_ = n_ + m;
  }

  // Minimizes sum of artificials. Returns the attained value (0 iff the
  // original system is feasible).
  Rational phase_one() {
    RatVec cost(total_);
    for (int j = n_; j < total_; ++j) cost[j] = 1;
    Rational value;
    if (!iterate(cost, value)) {
      throw InternalError("phase one cannot be unbounded");
    }
    if (value == 0) purge_artificials();
    return value;
  }

  // Minimizes cost over the feasible region reached by phase one.
  // Returns false when the objective is unbounded below.
  bool phase_two(RatVec cost, Rational& value) {
    cost.resize(total_);  // artificial columns already removed
    return iterate(cost, value);
  }

  RatVec solution() const {
    RatVec z(n_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < n_) z[basis_[i]] = b_[i];
    }
    return z;
  }

 private:
  bool iterate(const RatVec& cost, Rational& value) {
    for (;;) {
      // Reduced costs d_j = c_j - c_B . A_j.
      RatVec cb(basis_.size());
      for (std::size_t i = 0; i < basis_.size(); ++i) cb[i] = cost[basis_[i]];
      int entering = -1;
      for (int j = 0; j < total_ && entering < 0; ++j) {
        Rational d = cost[j];
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          if (cb[i] != 0 && A_[i][j] != 0) d -= cb[i] * A_[i][j];
        }
        if (d < 0) entering = j;
      }
      if (entering < 0) {
        value = 0;
        for (std::size_t i = 0; i < basis_.size(); ++i) value += cb[i] * b_[i];
        return true;
      }
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (A_[i][entering] <= 0) continue;
        Rational ratio = b_[i] / A_[i][entering];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, entering);
    }
  }

  void pivot(int r, int j) {
    const Rational piv = A_[r][j];
    for (auto& a : A_[r]) a /= piv;
    b_[r] /= piv;
    for (std::size_t i = 0; i < A_.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const Rational f = A_[i][j];
      if (f == 0) continue;
      for (int k = 0; k < total_; ++k) {
        if (A_[r][k] != 0) A_[i][k] -= f * A_[r][k];
      }
      b_[i] -= f * b_[r];
    }
    basis_[r] = j;
  }

  // After a zero-value phase one, pivot artificials out of the basis or
  // drop redundant rows, then strip the artificial columns.
  void purge_artificials() {
    for (int i = static_cast<int>(basis_.size()) - 1; i >= 0; --i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_ && col < 0; ++j) {
        if (A_[i][j] != 0) col = j;
      }
      if (col >= 0) {
        pivot(i, col);  // degenerate: b_[i] == 0, so feasibility is kept
      } else {
        A_.erase(A_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
    for (auto& row : A_) row.resize(n_);
    total_ = n_;
  }

  std::vector<RatVec> A_;
  RatVec b_;
  std::vector<int> basis_;
  int n_ = 0;
  int total_ = 0;
};

void verify_witness(const BoxLinearSystem& sys, const RatVec& x) {
  for (const auto& eq : sys.equalities) {
    Rational lhs = 0;
    for (int i = 0; i < sys.num_vars; ++i) lhs += eq.coeffs[i] * x[i];
    if (lhs != eq.rhs) throw InternalError("lp witness violates an equality");
  }
  for (int i = 0; i < sys.num_vars; ++i) {
    if (sys.lower[i] && x[i] < *sys.lower[i]) {
      throw InternalError("lp witness violates a lower bound");
    }
    if (sys.upper[i] && x[i] > *sys.upper[i]) {
      throw InternalError("lp witness violates an upper bound");
    }
  }
}

}  // namespace

LpOutcome solve_feasibility(const BoxLinearSystem& sys) {
  sys.validate();
  Standardized st = standardize(sys);
  Simplex spx(st.rows, st.rhs, st.num_cols);
  if (spx.phase_one() != 0) {
    return LpOutcome{LpStatus::Infeasible, {}, 0};
  }
  RatVec x = st.original_values(spx.solution());
  verify_witness(sys, x);
  return LpOutcome{LpStatus::Feasible, std::move(x), 0};
}

LpOutcome solve_min(const BoxLinearSystem& sys, const RatVec& objective) {
  sys.validate();
  if (static_cast<int>(objective.size()) != sys.num_vars) {
    throw MalformedSystem("objective length does not match variable count");
  }
  Standardized st = standardize(sys);

  RatVec cost(st.num_cols);
  Rational offset = 0;
  for (int i = 0; i < sys.num_vars; ++i) {
    const Rational& c = objective[i];
    if (c == 0) continue;
    const auto& vm = st.map[i];
    switch (vm.kind) {
      case Standardized::VarMap::Fixed:
        offset += c * vm.base;
        break;
      case Standardized::VarMap::ShiftLower:
        cost[vm.col] += c;
        offset += c * vm.base;
        break;
      case Standardized::VarMap::ShiftUpper:
        cost[vm.col] -= c;
        offset += c * vm.base;
        break;
      case Standardized::VarMap::Split:
        cost[vm.col] += c;
        cost[vm.col_neg] -= c;
        break;
    }
  }

  Simplex spx(st.rows, st.rhs, st.num_cols);
  if (spx.phase_one() != 0) {
    return LpOutcome{LpStatus::Infeasible, {}, 0};
  }
  Rational value;
  if (!spx.phase_two(cost, value)) {
    return LpOutcome{LpStatus::Unbounded, {}, 0};
  }
  RatVec x = st.original_values(spx.solution());
  verify_witness(sys, x);
  Rational check = 0;
  for (int i = 0; i < sys.num_vars; ++i) check += objective[i] * x[i];
  if (check != value + offset) {
    throw InternalError("lp objective value mismatch");
  }
  return LpOutcome{LpStatus::Optimal, std::move(x), value + offset};
}

}  // namespace rank1
