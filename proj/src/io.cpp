#include "rank1/io.hpp"

#include <fstream>
#include <sstream>

namespace rank1 {

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return Rational(BigInt(j.get<long long>()));
  }
  if (j.is_string()) {
    return parse_rational(j.get<std::string>());
  }
  if (j.is_number_float()) {
    throw ParseError("decimal floats are not exact; write \"p/q\" instead");
  }
  throw ParseError("expected a rational as an integer or \"p/q\" string");
}

Json ratvec_to_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(rational_to_json(e));
  return a;
}

RatVec ratvec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  RatVec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json point_to_json(const Point& p) {
  return Json{{"x", ratvec_to_json(p.x)}, {"y", ratvec_to_json(p.y)}};
}

Json matrix_to_json(const RatMat& M) { return ratvec_to_json(M.data()); }

namespace {

RatMat matrix_from_json(const Json& j, int m_hint, int n_hint) {
  if (!j.is_array()) throw ParseError("M must be an array");
  if (!j.empty() && j.front().is_array()) {
    // Nested rows.
    const int m = static_cast<int>(j.size());
    const int n = static_cast<int>(j.front().size());
    RatMat M(m, n);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(j[i].size()) != n) {
        throw ParseError("M rows have inconsistent lengths");
      }
      for (int jj = 0; jj < n; ++jj) {
        M.at(i, jj) = rational_from_json(j[i][jj]);
      }
    }
    return M;
  }
  // Row-major flat list; needs dimensions.
  if (m_hint <= 0 || n_hint <= 0) {
    throw ParseError("flat M needs \"m\" and \"n\" (or \"u\" and \"v\")");
  }
  if (static_cast<int>(j.size()) != m_hint * n_hint) {
    throw ParseError("M has wrong number of entries");
  }
  RatMat M(m_hint, n_hint);
  for (int i = 0; i < m_hint; ++i) {
    for (int jj = 0; jj < n_hint; ++jj) {
      M.at(i, jj) = rational_from_json(j[i * n_hint + jj]);
    }
  }
  return M;
}

int int_field(const Json& j, const char* name) {
  if (!j.contains(name)) return -1;
  if (!j.at(name).is_number_integer()) {
    throw ParseError(std::string(name) + " must be an integer");
  }
  return j.at(name).get<int>();
}

}  // namespace

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance file must be a JSON object");
  const int m_field = int_field(j, "m");
  const int n_field = int_field(j, "n");

  const bool has_factors = j.contains("u") && j.contains("v");
  RatVec u, v;
  if (has_factors) {
    u = ratvec_from_json(j.at("u"));
    v = ratvec_from_json(j.at("v"));
  }

  Instance inst = [&]() {
    if (j.contains("M")) {
      const int m_hint = has_factors ? static_cast<int>(u.size()) : m_field;
      const int n_hint = has_factors ? static_cast<int>(v.size()) : n_field;
      RatMat M = matrix_from_json(j.at("M"), m_hint, n_hint);
      return has_factors ? Instance::from_matrix_and_factors(M, u, v)
                         : Instance::from_matrix(M);
    }
    if (!has_factors) {
      throw ParseError("instance needs \"M\" or both \"u\" and \"v\"");
    }
    return Instance::from_factors(u, v);
  }();

  if (m_field >= 0 && m_field != inst.m()) {
    throw ParseError("field \"m\" disagrees with the data");
  }
  if (n_field >= 0 && n_field != inst.n()) {
    throw ParseError("field \"n\" disagrees with the data");
  }
  return inst;
}

Point point_from_json(const Json& j, const Instance& inst) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) {
    throw ParseError("point file needs \"x\" and \"y\"");
  }
  Point p{ratvec_from_json(j.at("x")), ratvec_from_json(j.at("y"))};
  check_dims(inst, p);
  return p;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw FileError(path + ": " + e.what());
  }
  return j;
}

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

Point load_point(const std::string& path, const Instance& inst) {
  return point_from_json(load_json(path), inst);
}

const char* to_cstring(CritMethod m) {
  switch (m) {
    case CritMethod::LambdaLP: return "LambdaLP";
    case CritMethod::DirectionalLP: return "DirectionalLP";
    case CritMethod::ClosedForm: return "ClosedForm";
  }
  return "?";
}

const char* to_cstring(PointKind k) {
  switch (k) {
    case PointKind::NotCritical: return "NotCritical";
    case PointKind::GlobalMin: return "GlobalMin";
    case PointKind::SpuriousLocalMin: return "SpuriousLocalMin";
    case PointKind::Saddle: return "Saddle";
  }
  return "?";
}

const char* to_cstring(MatchedCondition c) {
  switch (c) {
    case MatchedCondition::None: return "none";
    case MatchedCondition::C28: return "28";
    case MatchedCondition::C29a: return "29a";
    case MatchedCondition::C29b: return "29b";
    case MatchedCondition::C30a: return "30a";
    case MatchedCondition::C30b: return "30b";
    case MatchedCondition::C30cd: return "30c_d";
  }
  return "?";
}

const char* to_cstring(ClosedFormCondition c) {
  switch (c) {
    case ClosedFormCondition::C26a: return "26a";
    case ClosedFormCondition::C26b: return "26b";
    case ClosedFormCondition::C26c: return "26c";
    case ClosedFormCondition::C26de: return "26d_e";
  }
  return "?";
}

Json verdict_to_json(const CriticalityVerdict& v) {
  Json j{{"method", to_cstring(v.method)}, {"is_critical", v.is_critical}};
  Json evidence = Json::object();
  if (v.lambda_witness) {
    evidence["lambda_witness"] = matrix_to_json(*v.lambda_witness);
  }
  if (v.descent_certificate) {
    evidence["descent_certificate"] = point_to_json(*v.descent_certificate);
  }
  if (v.certificate_derivative) {
    evidence["directional_derivative"] =
        rational_to_json(*v.certificate_derivative);
  }
  if (v.matched_condition) {
    evidence["matched_condition"] = to_cstring(*v.matched_condition);
  }
  j["evidence"] = std::move(evidence);
  return j;
}

Json classification_to_json(const Classification& c) {
  Json j{{"kind", to_cstring(c.kind)},
         {"f_value", rational_to_json(c.f_value)}};
  if (c.kind != PointKind::NotCritical) {
    j["condition"] = to_cstring(c.condition);
  }
  if (c.theta) j["theta"] = rational_to_json(*c.theta);
  return j;
}

Json step_function_to_json(const StepFunction& sf) {
  return Json{{"breakpoints", ratvec_to_json(sf.breakpoints)},
              {"plateaus", ratvec_to_json(sf.plateau_values)}};
}

Json interval_to_json(const Interval& iv) {
  Json j = Json::object();
  j["lo"] = iv.lo ? rational_to_json(*iv.lo) : Json(nullptr);
  j["hi"] = iv.hi ? rational_to_json(*iv.hi) : Json(nullptr);
  return j;
}

Json interval_set_to_json(const IntervalSet& s) {
  Json a = Json::array();
  for (const auto& iv : s.intervals) a.push_back(interval_to_json(iv));
  return a;
}

Json step_function_report(const StepFunction& sf) {
  Json j = step_function_to_json(sf);
  j["roots"] = interval_set_to_json(roots(sf));
  Json jumps = Json::array();
  for (std::size_t k = 0; k < sf.breakpoints.size(); ++k) {
    Json one = interval_to_json(sf.jump_at(static_cast<int>(k)));
    one["t"] = rational_to_json(sf.breakpoints[k]);
    jumps.push_back(std::move(one));
  }
  j["jumps"] = std::move(jumps);
  return j;
}

Json descent_plan_to_json(const DescentPlan& plan) {
  return Json{{"theta", rational_to_json(plan.theta)},
              {"direction", point_to_json(plan.direction)},
              {"valid_step_bound", rational_to_json(plan.valid_step_bound)}};
}

Json float_point_to_json(const FloatPoint& p) {
  return Json{{"x", p.x}, {"y", p.y}};
}

Json descent_trace_to_json(const DescentTrace& t) {
  Json iters = Json::array();
  for (const auto& p : t.iterates) iters.push_back(float_point_to_json(p));
  return Json{
      {"schedule",
       Json{{"kind", t.schedule.kind == StepSchedule::Kind::Diminishing
                         ? "diminishing"
                         : "constant"},
            {"c", t.schedule.c}}},
      {"iterates", std::move(iters)},
      {"f_values", t.f_values},
      {"snapped_terminal", point_to_json(t.snapped_terminal)},
      {"terminal_classification",
       classification_to_json(t.terminal_classification)}};
}

namespace {

Json fuzz_case_to_json(const FuzzCase& c) {
  return Json{{"u", ratvec_to_json(c.u)},
              {"v", ratvec_to_json(c.v)},
              {"x", ratvec_to_json(c.x)},
              {"y", ratvec_to_json(c.y)}};
}

}  // namespace

Json fuzz_report_to_json(const FuzzReport& r) {
  Json disagreements = Json::array();
  for (const auto& d : r.disagreements) {
    Json j = fuzz_case_to_json(d.where);
    j["verdicts"] = Json{{"lp", d.lp},
                         {"directional", d.directional},
                         {"closed_form", d.closed_form}};
    disagreements.push_back(std::move(j));
  }
  Json violations = Json::array();
  for (const auto& v : r.classification_violations) {
    Json j = fuzz_case_to_json(v.where);
    j["violated"] = v.property;
    violations.push_back(std::move(j));
  }
  return Json{{"instances_tested", r.instances_tested},
              {"points_tested", r.points_tested},
              {"disagreements", std::move(disagreements)},
              {"classification_violations", std::move(violations)}};
}

namespace {

std::string axis_name(const GridAxis& ax) {
  return (ax.on_x ? "x" : "y") + std::to_string(ax.index + 1);
}

}  // namespace

Json grid_to_json(const GridSample& g) {
  Json axes = Json::array();
  for (std::size_t d = 0; d < g.spec.axes.size(); ++d) {
    axes.push_back(Json{{"name", axis_name(g.spec.axes[d])},
                        {"values", g.axis_values[d]}});
  }
  return Json{{"axes", std::move(axes)}, {"values", g.values}};
}

std::string grid_to_csv(const GridSample& g) {
  std::ostringstream out;
  out.precision(17);
  const int dims = static_cast<int>(g.spec.axes.size());
  for (int d = 0; d < dims; ++d) out << axis_name(g.spec.axes[d]) << ",";
  out << "f\n";
  std::vector<int> idx(dims, 0);
  for (double value : g.values) {
    for (int d = 0; d < dims; ++d) out << g.axis_values[d][idx[d]] << ",";
    out << value << "\n";
    int d = dims - 1;
    while (d >= 0 && ++idx[d] == g.spec.resolution) idx[d--] = 0;
  }
  return out.str();
}

}  // namespace rank1
