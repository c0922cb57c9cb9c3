#include "rank1/core.hpp"

#include <cctype>

namespace rank1 {

std::string to_string(const Rational& r) {
  std::string s = num(r).str();
  if (den(r) != 1) {
    s += "/";
    s += den(r).str();
  }
  return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::optional<Rational> try_parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
      negative = s[0] == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
    }
    BigInt value{std::string(s)};
    return negative ? -value : value;
  };

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto p = parse_int(text);
    if (!p) return std::nullopt;
    return Rational(*p);
  }
  auto p = parse_int(text.substr(0, slash));
  auto q = parse_int(text.substr(slash + 1));
  if (!p || !q || *q == 0) return std::nullopt;
  if (*q < 0) {
    *p = -*p;
    *q = -*q;
  }
  return Rational(*p, *q);
}

Rational parse_rational(std::string_view text) {
  auto r = try_parse_rational(text);
  if (!r) throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
  return *r;
}

Rational l1_norm(const RatVec& v) {
  Rational s = 0;
  for (const auto& e : v) s += abs(e);
  return s;
}

bool is_zero(const RatVec& v) {
  for (const auto& e : v) {
    if (e != 0) return false;
  }
  return true;
}

RatMat RatMat::outer(const RatVec& u, const RatVec& v) {
  RatMat M(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      M.at(i, j) = u[i] * v[j];
    }
  }
  return M;
}

Instance::Instance(RatMat M, RatVec u, RatVec v)
    : M_(std::move(M)), u_(std::move(u)), v_(std::move(v)) {
  if (M_.rows() != static_cast<int>(u_.size()) ||
      M_.cols() != static_cast<int>(v_.size())) {
    throw DimensionMismatch("instance: factor lengths do not match M");
  }
}

Instance Instance::from_factors(RatVec u, RatVec v) {
  if (u.empty() || v.empty()) throw DimensionMismatch("instance: empty factor");
  RatMat M = RatMat::outer(u, v);
  return Instance(std::move(M), std::move(u), std::move(v));
}

Instance Instance::from_matrix(const RatMat& M) {
  if (M.rows() == 0 || M.cols() == 0) {
    throw DimensionMismatch("factor_rank_one: empty matrix");
  }
  const int m = M.rows(), n = M.cols();
  RatVec u(m), v(n);

  // First nonzero column, scanned column-major.
  int jstar = -1;
  for (int j = 0; j < n && jstar < 0; ++j) {
    for (int i = 0; i < m; ++i) {
      if (M.at(i, j) != 0) {
        jstar = j;
        break;
      }
    }
  }
  if (jstar >= 0) {
    for (int i = 0; i < m; ++i) u[i] = M.at(i, jstar);
    int istar = 0;
    while (M.at(istar, jstar) == 0) ++istar;
    for (int j = 0; j < n; ++j) v[j] = M.at(istar, j) / M.at(istar, jstar);
  }
  // Zero matrix falls through with u = 0, v = 0.

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (u[i] * v[j] != M.at(i, j)) {
        throw RankTooHigh("factor_rank_one: matrix has rank >= 2");
      }
    }
  }
  return Instance(M, std::move(u), std::move(v));
}

Instance Instance::from_matrix_and_factors(const RatMat& M, RatVec u, RatVec v) {
  if (M.rows() != static_cast<int>(u.size()) ||
      M.cols() != static_cast<int>(v.size())) {
    throw DimensionMismatch("instance: factor lengths do not match M");
  }
  if (RatMat::outer(u, v) != M) {
    throw Error("instance: M and (u, v) disagree");
  }
  return Instance(M, std::move(u), std::move(v));
}

Instance factor_rank_one(const RatMat& M) { return Instance::from_matrix(M); }

void check_dims(const Instance& inst, const Point& p) {
  if (static_cast<int>(p.x.size()) != inst.m() ||
      static_cast<int>(p.y.size()) != inst.n()) {
    throw DimensionMismatch("point does not match instance dimensions");
  }
}

Rational eval_f(const Instance& inst, const Point& p) {
  check_dims(inst, p);
  Rational s = 0;
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      s += abs(p.x[i] * p.y[j] - inst.M().at(i, j));
    }
  }
  return s;
}

RatMat residual(const Instance& inst, const Point& p) {
  check_dims(inst, p);
  RatMat R(inst.m(), inst.n());
  for (int i = 0; i < inst.m(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      R.at(i, j) = p.x[i] * p.y[j] - inst.M().at(i, j);
    }
  }
  return R;
}

}  // namespace rank1
