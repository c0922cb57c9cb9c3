#pragma once

#include <json.hpp>

#include <string>

#include "rank1/classify.hpp"
#include "rank1/core.hpp"
#include "rank1/criticality.hpp"
#include "rank1/landscape.hpp"
#include "rank1/subdiff.hpp"

namespace rank1 {

using Json = nlohmann::json;

/// Could not open or read a file (distinct from malformed content so the
/// CLI can map both onto the file-error exit code).
struct FileError : Error {
  using Error::Error;
};

// Rationals travel as strings "p" / "p/q" or JSON integers. Anything
// inexact (decimal floats, exponents) is rejected.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json ratvec_to_json(const RatVec& v);
RatVec ratvec_from_json(const Json& j);

Json point_to_json(const Point& p);
Json matrix_to_json(const RatMat& M);  // row-major flat list

/// Instance files carry {"m", "n", "M" (row-major, optional), "u"
/// (optional), "v" (optional)}; at least one of M or (u, v) must be
/// present, and when both are they must agree exactly.
Instance instance_from_json(const Json& j);
Point point_from_json(const Json& j, const Instance& inst);

Instance load_instance(const std::string& path);
Point load_point(const std::string& path, const Instance& inst);
Json load_json(const std::string& path);

const char* to_cstring(CritMethod m);
const char* to_cstring(PointKind k);
const char* to_cstring(MatchedCondition c);
const char* to_cstring(ClosedFormCondition c);

Json verdict_to_json(const CriticalityVerdict& v);
Json classification_to_json(const Classification& c);
Json step_function_to_json(const StepFunction& sf);
/// StepFunction plus its root interval and jump intervals.
Json step_function_report(const StepFunction& sf);
Json interval_to_json(const Interval& iv);
Json interval_set_to_json(const IntervalSet& s);
Json descent_plan_to_json(const DescentPlan& plan);
Json float_point_to_json(const FloatPoint& p);
Json descent_trace_to_json(const DescentTrace& t);
Json fuzz_report_to_json(const FuzzReport& r);
Json grid_to_json(const GridSample& g);
std::string grid_to_csv(const GridSample& g);

}  // namespace rank1
