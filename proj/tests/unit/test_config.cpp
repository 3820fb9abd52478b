#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "incrprox/config.hpp"
#include "incrprox/trace_io.hpp"

using namespace incrprox;
using testing::vec;

namespace {

json abs_config() {
  return json::parse(R"({
    "problem": {"kind": "abs1d", "b": [1, 2, 3], "interval": [-10, 10]},
    "algorithm": {"variant": "prox_then_subgrad", "ordering": "cyclic",
                  "seed": 0, "stepsize": 0.01, "x0": [-4]},
    "limits": {"max_iters": 300},
    "report": {"eval_stride": 3, "emit": ["csv", "json"]}
  })");
}

std::string error_of(const json &doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError &e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string &msg, const std::string &field) {
  return msg.find(field) != std::string::npos;
}

} // namespace

TEST_CASE("a complete abs1d config parses") {
  const RunSpec spec = parse_config(abs_config());
  CHECK(spec.kind == "abs1d");
  REQUIRE(spec.problem);
  CHECK(spec.problem->size() == 3);
  CHECK(spec.config.schedule.kind == StepsizeKind::Constant);
  CHECK(spec.config.schedule.alpha == 0.01);
  CHECK(spec.config.limits.max_iters == 300);
  CHECK(spec.config.limits.eval_stride == 3);
  CHECK(*spec.config.x0 == vec({-4.0}));
  CHECK(spec.warnings.empty());
  CHECK_FALSE(spec.report.timing);
}

TEST_CASE("errors name the offending field") {
  json doc = abs_config();
  doc["algorithm"]["variant"] = "newton";
  CHECK(mentions(error_of(doc), "algorithm.variant"));

  doc = abs_config();
  doc["problem"].erase("kind");
  CHECK(mentions(error_of(doc), "problem.kind"));

  doc = abs_config();
  doc["problem"]["kind"] = "svm";
  CHECK(mentions(error_of(doc), "problem.kind"));

  doc = abs_config();
  doc["algorithm"]["stepsize"] = -1.0;
  CHECK(mentions(error_of(doc), "algorithm.stepsize"));

  doc = abs_config();
  doc["algorithm"]["stepsize"] = json{{"kind", "harmonic"}, {"a", 0}};
  CHECK(mentions(error_of(doc), "algorithm.stepsize"));

  doc = abs_config();
  doc["algorithm"]["ordering"] = "sorted";
  CHECK(mentions(error_of(doc), "algorithm.ordering"));

  doc = abs_config();
  doc["algorithm"]["x0"] = {1.0, 2.0};
  CHECK(mentions(error_of(doc), "algorithm.x0"));

  doc = abs_config();
  doc["limits"] = json::object();
  CHECK(mentions(error_of(doc), "limits.max_iters"));

  doc = abs_config();
  doc["report"]["emit"] = {"xml"};
  CHECK(mentions(error_of(doc), "report.emit[0]"));

  doc = abs_config();
  doc["problem"]["interval"] = {3, 1};
  CHECK(mentions(error_of(doc), "problem.interval"));

  // momentum needs the whole space: caught at parse time
  doc = abs_config();
  doc["algorithm"]["variant"] = "grad_momentum";
  CHECK(mentions(error_of(doc), "algorithm.variant"));

  CHECK(mentions(error_of(json::array()), "config"));
}

TEST_CASE("nested custom problems") {
  const json doc = json::parse(R"({
    "problem": {"kind": "custom", "dim": 2,
      "components": [
        {"prox": {"type": "l1", "gamma": 0.5},
         "subgrad": {"type": "rank1_quadratic", "c": [1, 2], "d": 1}},
        {"subgrad": {"type": "max_penalty", "c": 2,
                     "g": {"type": "affine", "a": [1, 0], "b": -1}}},
        {"prox": {"type": "distance", "gamma": 3,
                  "set": {"type": "box", "lo": ["-inf", 0], "hi": [1, "inf"]}}}
      ],
      "constraint": {"type": "intersection", "sets": [
        {"type": "ball", "center": [0, 0], "radius": 5},
        {"type": "halfspace", "a": [1, 1], "b": 4}]},
      "optimal_value": 0.25},
    "algorithm": {"variant": "C", "stepsize": {"kind": "harmonic", "a": 1, "b": 2}},
    "limits": {"max_cycles": 10}
  })");
  const RunSpec spec = parse_config(doc);
  REQUIRE(spec.problem);
  CHECK(spec.problem->size() == 3);
  CHECK(spec.problem->components[1].prox_part->is_zero());
  CHECK(spec.problem->optimal_value == 0.25);
  CHECK(spec.config.variant == Variant::SubgradThenProx);
  CHECK(spec.config.limits.max_cycles == 10);
  const Vector x = vec({2.0, -1.0});
  // 0.5*3 + 0.5*(0-1)^2 + 2*1 + 3*dist((2,-1), box) with dist = sqrt(2)
  CHECK(evaluate_total(*spec.problem, x) == Catch::Approx(4.0 + 3.0 * std::sqrt(2.0)));

  json bad = doc;
  bad["problem"]["components"][2]["prox"]["set"]["type"] = "simplex";
  CHECK(mentions(error_of(bad), "problem.components[2].prox.set.type"));
  bad = doc;
  bad["problem"]["components"][0]["subgrad"]["c"] = {1};
  CHECK(mentions(error_of(bad), "problem.components[0].subgrad.c"));
}

TEST_CASE("unknown keys produce warnings") {
  json doc = abs_config();
  doc["algorithm"]["stepsise"] = 0.1;
  doc["colour"] = "blue";
  const RunSpec spec = parse_config(doc);
  REQUIRE(spec.warnings.size() == 2);
  bool saw_alg = false, saw_top = false;
  for (const auto &w : spec.warnings) {
    saw_alg |= mentions(w, "algorithm.stepsise");
    saw_top |= mentions(w, "colour");
  }
  CHECK(saw_alg);
  CHECK(saw_top);
}

TEST_CASE("lasso, weber and feasibility configs") {
  const RunSpec lasso = parse_config(json::parse(R"({
    "problem": {"kind": "lasso", "gamma": 0.1,
                "random": {"m": 20, "dim": 4, "seed": 3, "nonzeros": 2}},
    "algorithm": {"stepsize": 0.01}, "limits": {"max_iters": 10}})"));
  CHECK(lasso.problem->size() == 20);
  CHECK(lasso.problem->dim == 4);

  const RunSpec weber = parse_config(json::parse(R"({
    "problem": {"kind": "weber", "anchors": [{"y": [0, 0]}, {"y": [3, 4], "w": 1}]},
    "algorithm": {"stepsize": 0.01}, "limits": {"max_iters": 10}})"));
  CHECK(weber.problem->optimal_value == 5.0);

  const RunSpec feas = parse_config(json::parse(R"({
    "problem": {"kind": "feasibility", "dim": 2, "sets": [
      {"type": "halfspace", "a": [1, 0], "b": 1},
      {"type": "ball", "center": [0, 0], "radius": 2}]},
    "algorithm": {"stepsize": 1}, "limits": {"max_iters": 10}})"));
  REQUIRE(feas.feasibility);
  CHECK(feas.feasibility->gamma == 1e6);

  CHECK(mentions(error_of(json::parse(R"({
    "problem": {"kind": "feasibility", "dim": 1,
      "sets": [{"type": "interval", "lo": 0, "hi": 1}],
      "objective": [{"subgrad": {"type": "abs_shift", "b": 2}}]},
    "algorithm": {"stepsize": 1}, "limits": {"max_iters": 10}})")),
                 "problem.gamma"));
}

TEST_CASE("execute writes consistent traces and bounds") {
  const RunSpec spec = parse_config(abs_config());
  const RunOutcome out = execute(spec);
  CHECK(out.trace.status == RunStatus::Completed);
  REQUIRE(out.bounds);
  CHECK(out.bounds->inputs.c == 1.0);
  CHECK(out.bounds->inputs.dist0 == 6.0);
  CHECK(out.bounds->cyclic_N.has_value());
  CHECK(out.bounds->observed_gap.value() == out.trace.best_value - 2.0);

  const std::string csv = trace_csv(out.trace);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line))
    ++count;
  CHECK(count == out.trace.rows.size() + 1);

  // diminishing steps: bounds withheld with a note
  json doc = abs_config();
  doc["algorithm"]["stepsize"] = json{{"kind", "harmonic"}};
  const RunOutcome dim = execute(parse_config(doc));
  CHECK_FALSE(dim.bounds);
  CHECK_FALSE(dim.bounds_note.empty());
}

TEST_CASE("trace.json feeds back as a config and reproduces the CSV") {
  const RunSpec spec = parse_config(abs_config());
  const RunOutcome first = execute(spec);
  const json trace_doc = trace_json(first.trace, spec.source);
  CHECK(trace_doc["metadata"]["variant"] == "prox_then_subgrad");
  CHECK(trace_doc["metadata"]["seed"] == 0);
  const RunOutcome again = execute(parse_config(trace_doc));
  CHECK(trace_csv(again.trace) == trace_csv(first.trace));

  const auto dir = std::filesystem::temp_directory_path() / "incrprox_config_test";
  std::filesystem::remove_all(dir);
  write_outputs(spec, first, dir);
  CHECK(std::filesystem::exists(dir / "trace.csv"));
  CHECK(std::filesystem::exists(dir / "trace.json"));
  CHECK(std::filesystem::exists(dir / "bounds.json"));
  const RunSpec loaded = load_config(dir / "trace.json");
  CHECK(trace_csv(execute(loaded).trace) == trace_csv(first.trace));
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 2.05, 1e-300, -7.25e12}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
