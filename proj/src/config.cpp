#include "incrprox/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "incrprox/apps.hpp"
#include "incrprox/functions.hpp"
#include "incrprox/sets.hpp"

namespace incrprox {

namespace {

std::string join(const std::string &where, const std::string &key) {
  return where.empty() ? key : where + "." + key;
}

std::string indexed(const std::string &where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

void require_object(const json &j, const std::string &where) {
  if (!j.is_object())
    throw ConfigError(where + ": expected an object");
}

void warn_unknown(const json &j, const std::string &where,
                  std::initializer_list<const char *> known,
                  std::vector<std::string> *warnings) {
  if (!warnings)
    return;
  std::set<std::string> ok(known.begin(), known.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key()))
      warnings->push_back("unknown key '" + join(where, it.key()) +
                          "' ignored");
}

const json &need(const json &j, const std::string &where, const char *key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(join(where, key) + ": required field is missing");
  return *it;
}

// Numbers may be given as "inf" / "-inf" strings.
double to_number(const json &v, const std::string &where) {
  if (v.is_number())
    return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf")
      return std::numeric_limits<double>::infinity();
    if (s == "-inf")
      return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError(where + ": expected a number");
}

double finite_number(const json &v, const std::string &where) {
  const double x = to_number(v, where);
  if (!std::isfinite(x))
    throw ConfigError(where + ": expected a finite number");
  return x;
}

double get_number(const json &j, const std::string &where, const char *key) {
  return finite_number(need(j, where, key), join(where, key));
}

std::optional<double> opt_number(const json &j, const std::string &where,
                                 const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  return finite_number(*it, join(where, key));
}

std::uint64_t to_count(const json &v, const std::string &where) {
  if (v.is_number_unsigned())
    return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_number_float()) {
    // allow 1e5 style literals when they are exact integers
    const double d = v.get<double>();
    if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d)
      return static_cast<std::uint64_t>(d);
  }
  throw ConfigError(where + ": expected a nonnegative integer");
}

std::optional<std::uint64_t> opt_count(const json &j, const std::string &where,
                                       const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  return to_count(*it, join(where, key));
}

std::string get_string(const json &j, const std::string &where,
                       const char *key) {
  const json &v = need(j, where, key);
  if (!v.is_string())
    throw ConfigError(join(where, key) + ": expected a string");
  return v.get<std::string>();
}

std::optional<std::string> opt_string(const json &j, const std::string &where,
                                      const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  if (!it->is_string())
    throw ConfigError(join(where, key) + ": expected a string");
  return it->get<std::string>();
}

bool opt_bool(const json &j, const std::string &where, const char *key,
              bool fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return fallback;
  if (!it->is_boolean())
    throw ConfigError(join(where, key) + ": expected true or false");
  return it->get<bool>();
}

Vector to_vector(const json &v, const std::string &where, std::size_t dim,
                 bool allow_inf = false) {
  if (!v.is_array())
    throw ConfigError(where + ": expected an array of numbers");
  if (dim && v.size() != dim)
    throw ConfigError(where + ": expected " + std::to_string(dim) +
                      " entries, got " + std::to_string(v.size()));
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] =
        allow_inf ? to_number(v[i], indexed(where, i))
                  : finite_number(v[i], indexed(where, i));
  return out;
}

Vector get_vector(const json &j, const std::string &where, const char *key,
                  std::size_t dim, bool allow_inf = false) {
  return to_vector(need(j, where, key), join(where, key), dim, allow_inf);
}

std::size_t get_dim(const json &j, const std::string &where) {
  const auto d = to_count(need(j, where, "dim"), join(where, "dim"));
  if (d == 0)
    throw ConfigError(join(where, "dim") + ": must be positive");
  return static_cast<std::size_t>(d);
}

// Wrap library validation errors so the message carries the field path.
template <class F> auto guarded(const std::string &where, F &&f) {
  try {
    return f();
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ComponentPair parse_component(const json &j, const std::string &where,
                              std::size_t dim, std::size_t i,
                              std::vector<std::string> *warnings) {
  require_object(j, where);
  warn_unknown(j, where, {"prox", "subgrad", "label"}, warnings);
  ComponentPair c;
  c.prox_part = j.contains("prox") ? parse_function(j["prox"], join(where, "prox"), dim)
                                   : make_zero();
  c.subgrad_part = j.contains("subgrad")
                       ? parse_function(j["subgrad"], join(where, "subgrad"), dim)
                       : make_zero();
  c.label = opt_string(j, where, "label").value_or("c" + std::to_string(i + 1));
  return c;
}

std::vector<ComponentPair> parse_components(const json &j,
                                            const std::string &where,
                                            std::size_t dim,
                                            std::vector<std::string> *warnings) {
  if (!j.is_array())
    throw ConfigError(where + ": expected an array of components");
  std::vector<ComponentPair> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_component(j[i], indexed(where, i), dim, i, warnings));
  return out;
}

Problem parse_abs1d(const json &p, std::vector<std::string> *warnings) {
  const std::string w = "problem";
  warn_unknown(p, w, {"kind", "b", "m", "interval", "placement"}, warnings);
  std::vector<double> b;
  if (p.contains("b")) {
    const Vector v = get_vector(p, w, "b", 0);
    if (v.size() == 0)
      throw ConfigError("problem.b: need at least one point");
    b.assign(v.data(), v.data() + v.size());
  } else if (p.contains("m")) {
    const auto m = to_count(p["m"], "problem.m");
    if (m == 0)
      throw ConfigError("problem.m: must be positive");
    for (std::uint64_t i = 1; i <= m; ++i)
      b.push_back(static_cast<double>(i));
  } else {
    throw ConfigError("problem.b: required field is missing (or give problem.m)");
  }
  std::optional<std::pair<double, double>> interval;
  if (p.contains("interval") && !p["interval"].is_null()) {
    const Vector iv = get_vector(p, w, "interval", 2, true);
    if (!(iv[0] <= iv[1]))
      throw ConfigError("problem.interval: lo must not exceed hi");
    interval = {iv[0], iv[1]};
  }
  const auto placement = opt_string(p, w, "placement").value_or("subgradient");
  AbsMode mode;
  if (placement == "subgradient")
    mode = AbsMode::Subgradient;
  else if (placement == "prox")
    mode = AbsMode::Prox;
  else
    throw ConfigError("problem.placement: expected 'prox' or 'subgradient'");
  return onedim_abs_benchmark(b, interval, mode);
}

Problem parse_lasso(const json &p, std::vector<std::string> *warnings) {
  const std::string w = "problem";
  warn_unknown(p, w,
               {"kind", "rows", "random", "gamma", "split", "optimal_value"},
               warnings);
  LassoInstance inst;
  const double gamma = get_number(p, w, "gamma");
  if (gamma < 0.0)
    throw ConfigError("problem.gamma: must be nonnegative");
  if (p.contains("rows")) {
    const json &rows = p["rows"];
    if (!rows.is_array() || rows.empty())
      throw ConfigError("problem.rows: expected a nonempty array");
    std::size_t dim = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string rw = indexed("problem.rows", i);
      require_object(rows[i], rw);
      warn_unknown(rows[i], rw, {"c", "d"}, warnings);
      Vector c = get_vector(rows[i], rw, "c", dim);
      dim = static_cast<std::size_t>(c.size());
      inst.rows.push_back({std::move(c), get_number(rows[i], rw, "d")});
    }
  } else if (p.contains("random")) {
    const json &r = p["random"];
    const std::string rw = "problem.random";
    require_object(r, rw);
    warn_unknown(r, rw, {"m", "dim", "seed", "nonzeros", "noise"}, warnings);
    const auto m = to_count(need(r, rw, "m"), rw + ".m");
    const auto dim = get_dim(r, rw);
    if (m == 0)
      throw ConfigError("problem.random.m: must be positive");
    inst = random_lasso(m, dim, gamma, opt_count(r, rw, "seed").value_or(0),
                        opt_count(r, rw, "nonzeros").value_or(0),
                        opt_number(r, rw, "noise").value_or(0.1));
  } else {
    throw ConfigError("problem.rows: required field is missing (or give "
                      "problem.random)");
  }
  inst.gamma = gamma;
  if (auto s = opt_string(p, w, "split"))
    inst.split = lasso_split_from_string(*s);
  Problem prob = guarded(w, [&] { return lasso_problem(inst); });
  prob.optimal_value = opt_number(p, w, "optimal_value");
  return prob;
}

Problem parse_weber(const json &p, std::vector<std::string> *warnings) {
  const std::string w = "problem";
  warn_unknown(p, w, {"kind", "anchors", "placement", "optimal_value"},
               warnings);
  const json &anchors = need(p, w, "anchors");
  if (!anchors.is_array() || anchors.empty())
    throw ConfigError("problem.anchors: expected a nonempty array");
  WeberInstance inst;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const std::string aw = indexed("problem.anchors", i);
    require_object(anchors[i], aw);
    warn_unknown(anchors[i], aw, {"y", "w"}, warnings);
    Vector y = get_vector(anchors[i], aw, "y", dim);
    dim = static_cast<std::size_t>(y.size());
    const double wt = opt_number(anchors[i], aw, "w").value_or(1.0);
    if (!(wt > 0.0))
      throw ConfigError(aw + ".w: must be positive");
    inst.anchors.push_back({std::move(y), wt});
  }
  const auto placement = opt_string(p, w, "placement").value_or("prox");
  WeberMode mode;
  if (placement == "prox")
    mode = WeberMode::Prox;
  else if (placement == "subgradient")
    mode = WeberMode::Subgradient;
  else
    throw ConfigError("problem.placement: expected 'prox' or 'subgradient'");
  Problem prob = guarded(w, [&] { return weber_problem(inst, mode); });
  if (auto fv = opt_number(p, w, "optimal_value"))
    prob.optimal_value = fv;
  return prob;
}

Problem parse_custom(const json &p, std::vector<std::string> *warnings) {
  const std::string w = "problem";
  warn_unknown(p, w,
               {"kind", "dim", "components", "constraint", "optimal_value",
                "optimal_set"},
               warnings);
  Problem prob;
  prob.dim = get_dim(p, w);
  prob.components =
      parse_components(need(p, w, "components"), "problem.components",
                       prob.dim, warnings);
  if (prob.components.empty())
    throw ConfigError("problem.components: need at least one component");
  prob.constraint = p.contains("constraint")
                        ? parse_set(p["constraint"], "problem.constraint", prob.dim)
                        : make_whole_space();
  prob.optimal_value = opt_number(p, w, "optimal_value");
  if (p.contains("optimal_set"))
    prob.optimal_set = parse_set(p["optimal_set"], "problem.optimal_set", prob.dim);
  return prob;
}

FeasibilityProblem parse_feasibility(const json &p,
                                     std::vector<std::string> *warnings) {
  const std::string w = "problem";
  warn_unknown(p, w,
               {"kind", "dim", "sets", "objective", "gamma", "lipschitz",
                "margin"},
               warnings);
  FeasibilityProblem fp;
  fp.dim = get_dim(p, w);
  const json &sets = need(p, w, "sets");
  if (!sets.is_array() || sets.empty())
    throw ConfigError("problem.sets: expected a nonempty array");
  for (std::size_t i = 0; i < sets.size(); ++i)
    fp.sets.push_back(parse_set(sets[i], indexed("problem.sets", i), fp.dim));
  if (p.contains("objective"))
    fp.objective = parse_components(p["objective"], "problem.objective",
                                    fp.dim, warnings);
  if (!fp.objective.empty() && fp.objective.size() != fp.sets.size())
    throw ConfigError("problem.objective: need one component per set");

  PenaltyWeights weights;
  weights.gamma = opt_number(p, w, "gamma");
  weights.lipschitz = opt_number(p, w, "lipschitz");
  weights.margin = opt_number(p, w, "margin");
  if (weights.margin && !(*weights.margin > 0.0))
    throw ConfigError("problem.margin: must be positive");
  if (weights.lipschitz && !(*weights.lipschitz > 0.0))
    throw ConfigError("problem.lipschitz: must be positive");
  if (!weights.gamma && !weights.lipschitz && fp.objective.empty()) {
    // Pure feasibility: L = 0, so any gamma is exact. A large one makes
    // every step a full projection.
    fp.gamma = 1e6;
  } else {
    if (!weights.gamma && !weights.lipschitz)
      throw ConfigError("problem.gamma: required with an objective (or give "
                        "problem.lipschitz)");
    fp.gamma = resolve_penalties(weights, fp.sets.size()).front();
  }
  return fp;
}

} // namespace

SetPtr parse_set(const json &j, const std::string &where, std::size_t dim) {
  require_object(j, where);
  const auto type = get_string(j, where, "type");
  return guarded(where, [&]() -> SetPtr {
    if (type == "whole_space")
      return make_whole_space();
    if (type == "box")
      return make_box(get_vector(j, where, "lo", dim, true),
                      get_vector(j, where, "hi", dim, true));
    if (type == "interval") {
      if (dim != 1)
        throw ConfigError(where + ": interval sets need dimension 1");
      return make_interval(to_number(need(j, where, "lo"), join(where, "lo")),
                           to_number(need(j, where, "hi"), join(where, "hi")));
    }
    if (type == "ball")
      return make_ball(get_vector(j, where, "center", dim),
                       get_number(j, where, "radius"));
    if (type == "halfspace")
      return make_halfspace(get_vector(j, where, "a", dim),
                            get_number(j, where, "b"));
    if (type == "hyperplane")
      return make_hyperplane(get_vector(j, where, "a", dim),
                             get_number(j, where, "b"));
    if (type == "intersection") {
      const json &sets = need(j, where, "sets");
      if (!sets.is_array() || sets.empty())
        throw ConfigError(join(where, "sets") + ": expected a nonempty array");
      std::vector<SetPtr> parts;
      for (std::size_t i = 0; i < sets.size(); ++i)
        parts.push_back(parse_set(sets[i], indexed(join(where, "sets"), i), dim));
      return make_intersection(std::move(parts));
    }
    throw ConfigError(join(where, "type") + ": unknown set type '" + type + "'");
  });
}

FunctionPtr parse_function(const json &j, const std::string &where,
                           std::size_t dim) {
  require_object(j, where);
  const auto type = get_string(j, where, "type");
  return guarded(where, [&]() -> FunctionPtr {
    if (type == "zero")
      return make_zero();
    if (type == "l1")
      return make_l1(get_number(j, where, "gamma"));
    if (type == "rank1_quadratic")
      return make_rank1_quadratic(get_vector(j, where, "c", dim),
                                  get_number(j, where, "d"));
    if (type == "weighted_norm")
      return make_weighted_norm(get_vector(j, where, "center", dim),
                                opt_number(j, where, "w").value_or(1.0));
    if (type == "abs_shift") {
      if (dim != 1)
        throw ConfigError(where + ": abs_shift needs dimension 1");
      return make_abs_shift(get_number(j, where, "b"));
    }
    if (type == "squared_distance")
      return make_squared_distance(get_vector(j, where, "center", dim),
                                   opt_number(j, where, "w").value_or(1.0));
    if (type == "affine")
      return make_affine(get_vector(j, where, "a", dim),
                         opt_number(j, where, "b").value_or(0.0));
    if (type == "distance")
      return make_distance(parse_set(need(j, where, "set"), join(where, "set"), dim),
                           opt_number(j, where, "gamma").value_or(1.0));
    if (type == "max_penalty")
      return make_max_penalty(
          parse_function(need(j, where, "g"), join(where, "g"), dim),
          get_number(j, where, "c"));
    if (type == "scaled")
      return make_scaled(
          parse_function(need(j, where, "fn"), join(where, "fn"), dim),
          get_number(j, where, "scale"));
    if (type == "sum") {
      const json &terms = need(j, where, "terms");
      if (!terms.is_array())
        throw ConfigError(join(where, "terms") + ": expected an array");
      std::vector<FunctionPtr> parts;
      for (std::size_t i = 0; i < terms.size(); ++i)
        parts.push_back(
            parse_function(terms[i], indexed(join(where, "terms"), i), dim));
      return make_sum(std::move(parts));
    }
    throw ConfigError(join(where, "type") + ": unknown function type '" + type +
                      "'");
  });
}

StepsizeSchedule parse_stepsize(const json &j, const std::string &where) {
  if (j.is_number())
    return guarded(where, [&] {
      return StepsizeSchedule::constant(finite_number(j, where));
    });
  require_object(j, where);
  const auto kind = get_string(j, where, "kind");
  StepsizeSchedule s;
  if (kind == "constant") {
    const double alpha = get_number(j, where, "alpha");
    s = guarded(where, [&] { return StepsizeSchedule::constant(alpha); });
  } else if (kind == "harmonic") {
    const double a = opt_number(j, where, "a").value_or(1.0);
    const double b = opt_number(j, where, "b").value_or(1.0);
    s = guarded(where, [&] { return StepsizeSchedule::harmonic(a, b); });
  } else if (kind == "table") {
    const Vector v = get_vector(j, where, "values", 0);
    s = guarded(where, [&] {
      return StepsizeSchedule::custom(std::vector<double>(v.data(), v.data() + v.size()));
    });
  } else
    throw ConfigError(join(where, "kind") + ": unknown stepsize kind '" + kind +
                      "'");
  auto it = j.find("cycle_locked");
  if (it != j.end() && !it->is_null()) {
    if (!it->is_boolean())
      throw ConfigError(join(where, "cycle_locked") + ": expected true or false");
    s.cycle_locked = it->get<bool>();
  }
  guarded(where, [&] {
    s.validate();
    return 0;
  });
  return s;
}

RunSpec parse_config(const json &input) {
  // A trace.json carries its config under metadata.config.
  const json *docp = &input;
  if (input.is_object() && input.contains("metadata") && input.contains("rows")) {
    const json &meta = input["metadata"];
    if (!meta.is_object() || !meta.contains("config"))
      throw ConfigError("metadata.config: trace file carries no config");
    docp = &meta["config"];
  }
  const json &doc = *docp;
  if (!doc.is_object())
    throw ConfigError("config: expected a JSON object at top level");

  RunSpec spec;
  spec.source = doc;
  auto *warnings = &spec.warnings;
  warn_unknown(doc, "", {"problem", "algorithm", "limits", "report"}, warnings);

  // problem
  const json &p = need(doc, "", "problem");
  require_object(p, "problem");
  spec.kind = get_string(p, "problem", "kind");
  if (spec.kind == "abs1d")
    spec.problem = parse_abs1d(p, warnings);
  else if (spec.kind == "lasso")
    spec.problem = parse_lasso(p, warnings);
  else if (spec.kind == "weber")
    spec.problem = parse_weber(p, warnings);
  else if (spec.kind == "custom")
    spec.problem = parse_custom(p, warnings);
  else if (spec.kind == "feasibility")
    spec.feasibility = parse_feasibility(p, warnings);
  else
    throw ConfigError("problem.kind: unknown kind '" + spec.kind +
                      "' (expected lasso, weber, abs1d, feasibility or custom)");
  const std::size_t dim =
      spec.problem ? spec.problem->dim : spec.feasibility->dim;

  // algorithm
  RunConfig &cfg = spec.config;
  const json &a = need(doc, "", "algorithm");
  require_object(a, "algorithm");
  warn_unknown(a, "algorithm",
               {"variant", "ordering", "seed", "stepsize", "beta", "x0"},
               warnings);
  if (auto v = opt_string(a, "algorithm", "variant")) {
    try {
      cfg.variant = variant_from_string(*v);
    } catch (const ConfigError &) {
      throw ConfigError("algorithm.variant: unknown variant '" + *v + "'");
    }
  }
  if (auto o = opt_string(a, "algorithm", "ordering")) {
    try {
      cfg.ordering = ordering_from_string(*o);
    } catch (const ConfigError &) {
      throw ConfigError("algorithm.ordering: unknown ordering '" + *o + "'");
    }
  }
  cfg.seed = opt_count(a, "algorithm", "seed").value_or(0);
  cfg.schedule = parse_stepsize(need(a, "algorithm", "stepsize"),
                                "algorithm.stepsize");
  cfg.momentum_beta = opt_number(a, "algorithm", "beta").value_or(0.0);
  if (a.contains("x0") && !a["x0"].is_null())
    cfg.x0 = get_vector(a, "algorithm", "x0", dim);

  // limits
  const json &l = need(doc, "", "limits");
  require_object(l, "limits");
  warn_unknown(l, "limits",
               {"max_iters", "max_cycles", "target_value", "record_stride"},
               warnings);
  const auto max_iters = opt_count(l, "limits", "max_iters");
  cfg.limits.max_cycles = opt_count(l, "limits", "max_cycles");
  if (!max_iters && !cfg.limits.max_cycles)
    throw ConfigError("limits.max_iters: required field is missing (or give "
                      "limits.max_cycles)");
  cfg.limits.max_iters =
      max_iters.value_or(std::numeric_limits<std::uint64_t>::max());
  cfg.limits.target_value = opt_number(l, "limits", "target_value");
  cfg.limits.record_stride = opt_count(l, "limits", "record_stride").value_or(1);
  if (cfg.limits.record_stride == 0)
    throw ConfigError("limits.record_stride: must be positive");

  // report
  if (doc.contains("report")) {
    const json &r = doc["report"];
    require_object(r, "report");
    warn_unknown(r, "report", {"eval_stride", "emit", "timing", "epsilon"},
                 warnings);
    spec.report.eval_stride = opt_count(r, "report", "eval_stride").value_or(0);
    spec.report.timing = opt_bool(r, "report", "timing", false);
    spec.report.epsilon = opt_number(r, "report", "epsilon").value_or(1e-2);
    if (!(spec.report.epsilon > 0.0))
      throw ConfigError("report.epsilon: must be positive");
    if (r.contains("emit")) {
      const json &e = r["emit"];
      if (!e.is_array())
        throw ConfigError("report.emit: expected an array such as [\"csv\", \"json\"]");
      spec.report.emit_csv = spec.report.emit_json = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        const std::string ew = indexed("report.emit", i);
        if (!e[i].is_string())
          throw ConfigError(ew + ": expected \"csv\" or \"json\"");
        const auto s = e[i].get<std::string>();
        if (s == "csv")
          spec.report.emit_csv = true;
        else if (s == "json")
          spec.report.emit_json = true;
        else
          throw ConfigError(ew + ": unknown format '" + s + "'");
      }
    }
  }
  cfg.limits.eval_stride = spec.report.eval_stride;
  cfg.timing = spec.report.timing;

  // Cross-field checks the engine would otherwise raise at run time.
  if (spec.problem) {
    RunConfig probe = cfg;
    probe.limits.max_iters = 0;
    probe.limits.max_cycles.reset();
    try {
      (void)run(*spec.problem, probe);
    } catch (const ConfigError &) {
      throw;
    } catch (const Error &e) {
      throw ConfigError(std::string("problem: ") + e.what());
    }
  } else if (spec.feasibility->objective.empty() &&
             cfg.variant != Variant::ProxThenSubgrad) {
    // the composed feasibility iteration has a fixed form
    spec.warnings.push_back("algorithm.variant ignored for feasibility runs");
  }
  return spec;
}

RunSpec load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config: cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("config: invalid JSON in '" + path.string() +
                      "': " + e.what());
  }
  return parse_config(doc);
}

std::optional<BoundReport> report_bounds(const Problem &problem,
                                         const RunConfig &config,
                                         const Trace &trace, double epsilon,
                                         std::string *note) {
  auto fail = [&](const std::string &why) -> std::optional<BoundReport> {
    if (note)
      *note = why;
    return std::nullopt;
  };
  if (config.schedule.kind != StepsizeKind::Constant)
    return fail("error bounds apply to constant stepsizes only");
  if (trace.oracle_log.count == 0)
    return fail("no oracle evaluations were logged");
  BoundInputs in;
  in.alpha = config.schedule.alpha;
  in.m = problem.size();
  in.c = estimate_c(trace.oracle_log);
  in.epsilon = epsilon;
  if (!(in.c > 0.0))
    return fail("all logged subgradients were zero");
  const Vector x0 = config.x0 ? *config.x0
                              : Vector::Zero(static_cast<Eigen::Index>(problem.dim));
  const bool dist0_known = static_cast<bool>(problem.optimal_set);
  if (dist0_known)
    in.dist0 = problem.optimal_set->distance(x0);
  std::optional<double> gap;
  if (problem.optimal_value)
    gap = trace.best_value - *problem.optimal_value;
  return make_bound_report(in, dist0_known, true, gap);
}

RunOutcome execute(const RunSpec &spec) {
  RunOutcome out;
  if (spec.feasibility) {
    out.trace = run_feasibility(*spec.feasibility, spec.config);
    out.bounds_note = "error bounds are not reported for feasibility runs";
    return out;
  }
  out.trace = run(*spec.problem, spec.config);
  if (out.trace.status == RunStatus::Completed)
    out.bounds = report_bounds(*spec.problem, spec.config, out.trace,
                               spec.report.epsilon, &out.bounds_note);
  else
    out.bounds_note = "run failed";
  return out;
}

} // namespace incrprox
