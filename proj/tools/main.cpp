// Command line front end: every analysis reads instance/point JSON files
// and emits machine-readable JSON (or CSV for grids) on stdout.
//
// Exit codes: 0 success, 1 "not critical" (critical subcommand), 2 decider
// disagreement, 64 usage errors, 65 precondition/data errors, 66 file
// errors, 70 internal errors.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rank1/io.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitFile = 66;
constexpr int kExitInternal = 70;

using namespace rank1;

void emit(const Json& j) { std::cout << j.dump(2) << std::endl; }

std::vector<double> parse_float_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

GridAxis parse_axis(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) {
    throw CLI::ValidationError("--axes", "axis must look like x1 or y2");
  }
  GridAxis ax;
  ax.on_x = name[0] == 'x';
  ax.index = std::stoi(name.substr(1)) - 1;
  return ax;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact landscape analysis of the rank-one l1 factorization objective"};
  app.require_subcommand(1);

  std::string instance_path, point_path;
  auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "instance JSON file")
        ->required();
  };
  auto add_point = [&](CLI::App* cmd) {
    cmd->add_option("--point", point_path, "point JSON file")->required();
  };

  // critical
  auto* critical = app.add_subcommand("critical", "decide 0 in df(x,y)");
  add_instance(critical);
  add_point(critical);
  std::string method = "all";
  critical->add_option("--method", method, "lp|dir|closed|all")
      ->check(CLI::IsMember({"lp", "dir", "closed", "all"}));

  // classify
  auto* classify = app.add_subcommand("classify", "classify a critical point");
  add_instance(classify);
  add_point(classify);

  // descend
  auto* descend = app.add_subcommand("descend", "descent direction at a saddle");
  add_instance(descend);
  add_point(descend);
  std::string t_text;
  descend->add_option("--t", t_text, "step size \"p/q\" to verify (default: the plan bound)");

  // steps
  auto* steps = app.add_subcommand("steps", "step functions with roots and jumps");
  add_instance(steps);
  add_point(steps);

  // sample
  auto* sample = app.add_subcommand("sample", "grid of objective values");
  add_instance(sample);
  std::string axes_text, range_text, format = "csv";
  int resolution = 0;
  std::string base_point_path;
  sample->add_option("--axes", axes_text, "comma list, e.g. x1,y1")->required();
  sample->add_option("--range", range_text, "lo:hi per axis, comma separated")
      ->required();
  sample->add_option("--res", resolution, "points per axis")->required();
  sample->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--point", base_point_path,
                     "point file fixing the off-axis coordinates (default 0)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "subgradient descent trace");
  add_instance(simulate);
  std::string init_text;
  int iters = 1000;
  std::uint64_t sim_seed = 0;
  double step_c = 0.1;
  std::string schedule = "diminishing";
  int record_every = 1;
  simulate->add_option("--init", init_text,
                       "comma floats x1..xm,y1..yn (default: random from --seed)");
  simulate->add_option("--iters", iters, "iteration count");
  simulate->add_option("--seed", sim_seed, "seed for a random init");
  simulate->add_option("--step-c", step_c, "schedule constant c");
  simulate->add_option("--schedule", schedule, "diminishing|constant")
      ->check(CLI::IsMember({"diminishing", "constant"}));
  simulate->add_option("--record-every", record_every, "trace stride");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "cross-oracle equivalence fuzzing");
  FuzzConfig fc;
  fuzz->add_option("--count", fc.num_instances, "number of instances");
  fuzz->add_option("--seed", fc.seed, "RNG seed");
  fuzz->add_option("--mmax", fc.m_max, "max rows (<= 4)");
  fuzz->add_option("--nmax", fc.n_max, "max cols (<= 4)");
  fuzz->add_option("--points", fc.points_per_instance, "points per instance");
  fuzz->add_option("--probe-samples", fc.probe_samples,
                   "perturbations per spurious point");

  // theorem
  auto* theorem = app.add_subcommand("theorem", "no-spurious-minima predicate");
  add_instance(theorem);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (critical->parsed()) {
    Instance inst = load_instance(instance_path);
    Point p = load_point(point_path, inst);
    std::vector<CriticalityVerdict> verdicts;
    if (method == "lp" || method == "all") {
      verdicts.push_back(is_critical_lp(inst, p));
    }
    if (method == "dir" || method == "all") {
      verdicts.push_back(is_critical_directional(inst, p));
    }
    if (method == "closed" || method == "all") {
      verdicts.push_back(is_critical_closed_form(inst, p));
    }
    bool all_crit = true, any_crit = false;
    Json arr = Json::array();
    for (const auto& v : verdicts) {
      arr.push_back(verdict_to_json(v));
      all_crit = all_crit && v.is_critical;
      any_crit = any_crit || v.is_critical;
    }
    const bool agree = all_crit || !any_crit;
    emit(Json{{"verdicts", std::move(arr)},
              {"agree", agree},
              {"is_critical", agree ? Json(all_crit) : Json(nullptr)}});
    if (!agree) return 2;
    return all_crit ? 0 : 1;
  }

  if (classify->parsed()) {
    Instance inst = load_instance(instance_path);
    Point p = load_point(point_path, inst);
    emit(classification_to_json(classify_point(inst, p)));
    return 0;
  }

  if (descend->parsed()) {
    Instance inst = load_instance(instance_path);
    Point p = load_point(point_path, inst);
    DescentPlan plan = descent_direction(inst, p);
    Rational t = t_text.empty() ? plan.valid_step_bound : parse_rational(t_text);
    Json j = descent_plan_to_json(plan);
    j["t"] = rational_to_json(t);
    j["verified"] = verify_descent(inst, p, plan, t);
    j["f_before"] = rational_to_json(eval_f(inst, p));
    j["f_after"] =
        rational_to_json(eval_f(inst, point_axpy(p, t, plan.direction)));
    emit(j);
    return 0;
  }

  if (steps->parsed()) {
    Instance inst = load_instance(instance_path);
    Point p = load_point(point_path, inst);
    emit(Json{{"alpha", step_function_report(step_alpha(inst, p))},
              {"beta", step_function_report(step_beta(inst, p))}});
    return 0;
  }

  if (sample->parsed()) {
    Instance inst = load_instance(instance_path);
    GridSpec spec;
    spec.resolution = resolution;
    std::stringstream axes_ss(axes_text);
    std::string axis_item;
    while (std::getline(axes_ss, axis_item, ',')) {
      spec.axes.push_back(parse_axis(axis_item));
    }
    std::stringstream range_ss(range_text);
    std::string range_item;
    std::size_t d = 0;
    while (std::getline(range_ss, range_item, ',')) {
      const auto colon = range_item.find(':');
      if (colon == std::string::npos || d >= spec.axes.size()) {
        throw CLI::ValidationError("--range", "expected lo:hi per axis");
      }
      spec.axes[d].lo = std::stod(range_item.substr(0, colon));
      spec.axes[d].hi = std::stod(range_item.substr(colon + 1));
      ++d;
    }
    if (d != spec.axes.size()) {
      throw CLI::ValidationError("--range", "one lo:hi pair per axis");
    }
    spec.base.x.assign(inst.m(), 0.0);
    spec.base.y.assign(inst.n(), 0.0);
    if (!base_point_path.empty()) {
      Point base = load_point(base_point_path, inst);
      for (int i = 0; i < inst.m(); ++i) spec.base.x[i] = to_double(base.x[i]);
      for (int j = 0; j < inst.n(); ++j) spec.base.y[j] = to_double(base.y[j]);
    }
    GridSample g = grid_sample(inst, spec);
    if (format == "csv") {
      std::cout << grid_to_csv(g);
    } else {
      emit(grid_to_json(g));
    }
    return 0;
  }

  if (simulate->parsed()) {
    Instance inst = load_instance(instance_path);
    FloatPoint init;
    if (!init_text.empty()) {
      std::vector<double> vals = parse_float_list(init_text);
      if (static_cast<int>(vals.size()) != inst.m() + inst.n()) {
        throw CLI::ValidationError("--init", "need m + n floats");
      }
      init.x.assign(vals.begin(), vals.begin() + inst.m());
      init.y.assign(vals.begin() + inst.m(), vals.end());
    } else {
      std::mt19937_64 rng(sim_seed);
      auto unif = [&]() { return -5.0 + 10.0 * (rng() >> 11) * 0x1.0p-53; };
      init.x.resize(inst.m());
      init.y.resize(inst.n());
      for (auto& e : init.x) e = unif();
      for (auto& e : init.y) e = unif();
    }
    DescentOptions opts;
    opts.max_iters = iters;
    opts.record_every = record_every;
    opts.schedule.c = step_c;
    opts.schedule.kind = schedule == "constant" ? StepSchedule::Kind::Constant
                                                : StepSchedule::Kind::Diminishing;
    emit(descent_trace_to_json(run_descent(inst, init, opts)));
    return 0;
  }

  if (fuzz->parsed()) {
    FuzzReport report = fuzz_equivalence(fc);
    emit(fuzz_report_to_json(report));
    return report.clean() ? 0 : kExitInternal;
  }

  if (theorem->parsed()) {
    Instance inst = load_instance(instance_path);
    Json j{{"no_spurious", theorem1_predicate(inst.M())}};
    if (auto w = spurious_witness(inst)) j["witness"] = point_to_json(*w);
    emit(j);
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rank1::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFile;
  } catch (const rank1::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFile;
  } catch (const rank1::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const rank1::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
