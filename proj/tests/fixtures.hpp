#pragma once

#include <initializer_list>

#include "rank1/core.hpp"

namespace rank1::testing {

inline RatVec rv(std::initializer_list<const char*> items) {
  RatVec out;
  for (const char* s : items) out.push_back(parse_rational(s));
  return out;
}

inline RatMat rm(int rows, int cols, std::initializer_list<const char*> items) {
  RatMat M(rows, cols);
  int k = 0;
  for (const char* s : items) {
    M.at(k / cols, k % cols) = parse_rational(s);
    ++k;
  }
  return M;
}

// Strict-inclusion counterexample: not critical although zero lies in
// every partial subdifferential.
inline Instance counterexample_instance() {
  return Instance::from_matrix(rm(2, 2, {"2", "1", "-1", "-1/2"}));
}

inline Point counterexample_point() {
  return Point{rv({"1", "-1"}), rv({"1", "1"})};
}

// Critical saddle with m = 5, n = 3 whose step functions have breakpoints
// {-2, 1} and {-2, -1, 1, 2}.
inline Instance staircase_instance() {
  return Instance::from_factors(rv({"-2", "-1", "2", "1", "-2"}),
                                rv({"-1", "1", "1"}));
}

inline Point staircase_point() {
  return Point{rv({"2", "-1", "-1", "1", "-1"}), rv({"-1", "-1/2", "-1/2"})};
}

// Tall single-column target (0, 1)^T: the smallest instance with a
// spurious region.
inline Instance column_instance() {
  return Instance::from_matrix(rm(2, 1, {"0", "1"}));
}

}  // namespace rank1::testing
