#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rank1/classify.hpp"
#include "rank1/core.hpp"

namespace rank1 {

/// Float-side view of a candidate point. Only the simulator and sampler
/// live in floating point; every exact verdict goes through a snap back to
/// rationals followed by the exact classifier.
struct FloatPoint {
  std::vector<double> x;
  std::vector<double> y;
};

double eval_f_float(const Instance& inst, const FloatPoint& p);

/// Smoothed objective: sum of |x_i y_j - M_ij|^power, power > 1.
double eval_fp(const Instance& inst, const FloatPoint& p, double power);

/// One subgradient step with the selection Lambda = sgn(residual)
/// (sgn(0) = 0, so exact global minima are fixed points).
FloatPoint subgradient_step(const Instance& inst, const FloatPoint& p,
                            double step);

struct StepSchedule {
  enum class Kind { Diminishing, Constant };
  Kind kind = Kind::Diminishing;
  double c = 0.1;  // step = c / k (diminishing) or c (constant)
};

struct DescentOptions {
  StepSchedule schedule;
  int max_iters = 1000;
  int record_every = 1;  // iterates/f_values kept every k-th step
  std::int64_t snap_denominator = 1000000;
  std::int64_t snap_denominator_fallback = 100;
};

struct DescentTrace {
  std::vector<FloatPoint> iterates;
  std::vector<double> f_values;
  StepSchedule schedule;
  Point snapped_terminal;
  Classification terminal_classification;
};

DescentTrace run_descent(const Instance& inst, const FloatPoint& init,
                         const DescentOptions& opts);

/// Best rational approximation with denominator at most max_den
/// (continued fractions with semiconvergents; the double is treated as the
/// exact binary rational it is).
Rational snap_to_rational(double value, const BigInt& max_den);

Point snap_point(const FloatPoint& p, const BigInt& max_den);

struct GridAxis {
  bool on_x = true;  // coordinate of x (true) or y (false)
  int index = 0;     // 0-based coordinate index
  double lo = 0, hi = 0;
};

struct GridSpec {
  std::vector<GridAxis> axes;  // 2 or 3 axes
  int resolution = 0;          // samples per axis
  FloatPoint base;             // values for the coordinates not on an axis
};

struct GridSample {
  GridSpec spec;
  std::vector<std::vector<double>> axis_values;
  std::vector<double> values;  // row-major, last axis fastest
};

GridSample grid_sample(const Instance& inst, const GridSpec& spec);

/// Cross-oracle fuzzing: random instances and points from a small rational
/// pool; every point runs all three criticality deciders and the
/// classifier's side conditions. Deterministic given the seed.
struct FuzzConfig {
  int num_instances = 500;
  int points_per_instance = 20;
  int m_max = 4;
  int n_max = 4;
  std::vector<Rational> value_pool;  // empty = default pool
  std::uint64_t seed = 42;
  int probe_samples = 32;
};

struct FuzzCase {
  RatVec u, v;  // instance factors
  RatVec x, y;  // point
};

struct FuzzDisagreement {
  FuzzCase where;
  bool lp = false, directional = false, closed_form = false;
};

struct FuzzViolation {
  FuzzCase where;
  std::string property;
};

struct FuzzReport {
  int instances_tested = 0;
  long long points_tested = 0;
  std::vector<FuzzDisagreement> disagreements;
  std::vector<FuzzViolation> classification_violations;

  bool clean() const {
    return disagreements.empty() && classification_violations.empty();
  }
};

const std::vector<Rational>& default_value_pool();

FuzzReport fuzz_equivalence(const FuzzConfig& cfg);

}  // namespace rank1
