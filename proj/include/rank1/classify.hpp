#pragma once

#include <cstdint>
#include <optional>

#include "rank1/core.hpp"
#include "rank1/criticality.hpp"

namespace rank1 {

enum class PointKind { NotCritical, GlobalMin, SpuriousLocalMin, Saddle };

/// Which classification clause matched (diagnostic label; the kind is what
/// the landscape theorem partitions).
enum class MatchedCondition { None, C28, C29a, C29b, C30a, C30b, C30cd };

struct Classification {
  PointKind kind = PointKind::NotCritical;
  MatchedCondition condition = MatchedCondition::None;
  std::optional<Rational> theta;  // GlobalMin scaling when u != 0 and v != 0
  Rational f_value;
};

/// A verified descent construction at a saddle: direction towards the
/// global minimum (u theta, v / theta), with a step bound t such that
/// f(p + t d) = (1 - t^2) f(p) holds exactly at t and t/2.
struct DescentPlan {
  Rational theta;
  Point direction;
  Rational valid_step_bound;
};

/// Full classification. Runs all three criticality deciders and throws
/// InternalError if they disagree (they are provably equivalent, so a
/// disagreement is a build bug).
Classification classify_point(const Instance& inst, const Point& p);

/// Classification when criticality has already been decided by the caller
/// (e.g. the fuzz harness, which wants to observe disagreements rather
/// than throw on them).
Classification classify_point_given(const Instance& inst, const Point& p,
                                    bool is_critical);

/// Constructs the descent direction at a saddle. Requires
/// classify_point(p).kind == Saddle and u != 0, v != 0.
DescentPlan descent_direction(const Instance& inst, const Point& p);

/// True iff f(p + t d) = (1 - t^2) f(p) exactly.
bool verify_descent(const Instance& inst, const Point& p,
                    const DescentPlan& plan, const Rational& t);

/// A point satisfying the strict spurious-minimum clause, when one exists
/// (u or v has both zero and nonzero entries); otherwise nullopt.
std::optional<Point> spurious_witness(const Instance& inst);

/// True iff M has no zero entries or M = 0; equivalently, f has no
/// spurious local minima. Throws RankTooHigh when rank(M) >= 2.
bool theorem1_predicate(const RatMat& M);

/// Randomized exact probe around a spurious local minimum: perturbations
/// of sup-norm at most the pinned radius must never decrease f, and must
/// respect the exact perturbed-slack lower bound whenever the expansion
/// premise holds. Sound for instances with min(m, n) <= 4 zero-pattern
/// support; always deterministic given the seed.
struct SpuriousProbeConfig {
  int samples = 200;
  std::uint64_t seed = 0;
  int lattice = 64;  // perturbation entries are radius * z / lattice
};

struct SpuriousProbeResult {
  int samples = 0;
  int decreases = 0;          // f decreased: disproves local minimality
  int premise_failures = 0;   // expansion premise failed; bound skipped
  int bound_failures = 0;     // exact slack lower bound violated
  int half_bound_applicable = 0;
  int half_bound_failures = 0;
};

Rational spurious_probe_radius(const Instance& inst, const Point& p);

SpuriousProbeResult spurious_probe(const Instance& inst, const Point& p,
                                   const SpuriousProbeConfig& cfg);

Point point_axpy(const Point& p, const Rational& t, const Point& d);

}  // namespace rank1
