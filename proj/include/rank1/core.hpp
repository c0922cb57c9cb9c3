#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rank1/rational.hpp"

namespace rank1 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vector/matrix shapes do not line up.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A matrix handed to factor_rank_one has rank two or more.
struct RankTooHigh : Error {
  using Error::Error;
};

/// Malformed textual input (rationals, JSON payloads).
struct ParseError : Error {
  using Error::Error;
};

/// An operation was called outside its stated precondition.
struct PreconditionViolated : Error {
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

/// Ill-formed linear system (bad sizes, crossed bounds).
struct MalformedSystem : Error {
  using Error::Error;
};

using RatVec = std::vector<Rational>;

Rational l1_norm(const RatVec& v);
bool is_zero(const RatVec& v);

/// Dense row-major matrix of exact rationals.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMat outer(const RatVec& u, const RatVec& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return data_[i * cols_ + j]; }
  const Rational& at(int i, int j) const { return data_[i * cols_ + j]; }

  const RatVec& data() const { return data_; }

  bool operator==(const RatMat&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  RatVec data_;
};

/// A candidate point (x, y) in R^m x R^n.
struct Point {
  RatVec x;
  RatVec y;
};

/// The target matrix M together with a rank-one factorization M = u v^T.
/// The factorization identity is checked exactly on construction, so an
/// Instance is always internally consistent.
class Instance {
 public:
  /// Canonical factorization: u is the first nonzero column of M, and v is
  /// the corresponding row of column ratios. Throws RankTooHigh when the
  /// product u v^T fails to reproduce M.
  static Instance from_matrix(const RatMat& M);

  /// Builds M = u v^T from the given factors (always rank <= 1).
  static Instance from_factors(RatVec u, RatVec v);

  /// Both pieces supplied: they must agree exactly.
  static Instance from_matrix_and_factors(const RatMat& M, RatVec u, RatVec v);

  int m() const { return static_cast<int>(u_.size()); }
  int n() const { return static_cast<int>(v_.size()); }

  const RatMat& M() const { return M_; }
  const RatVec& u() const { return u_; }
  const RatVec& v() const { return v_; }

 private:
  Instance(RatMat M, RatVec u, RatVec v);

  RatMat M_;
  RatVec u_;
  RatVec v_;
};

/// Canonical deterministic rank-one factorization; see Instance::from_matrix.
Instance factor_rank_one(const RatMat& M);

void check_dims(const Instance& inst, const Point& p);

/// Objective value: the entrywise l1 distance between x y^T and M.
Rational eval_f(const Instance& inst, const Point& p);

/// Residual matrix x y^T - M.
RatMat residual(const Instance& inst, const Point& p);

}  // namespace rank1
