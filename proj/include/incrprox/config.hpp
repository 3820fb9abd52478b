#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "incrprox/bounds.hpp"
#include "incrprox/engine.hpp"
#include "incrprox/penalty.hpp"

namespace incrprox {

using json = nlohmann::json;

struct ReportSpec {
  std::uint64_t eval_stride = 0; // 0 = once per cycle
  bool emit_csv = true;
  bool emit_json = true;
  bool timing = false;
  double epsilon = 1e-2; // accuracy used for the iteration estimates
};

/// A validated run request. `source` is the config document as given and is
/// written back verbatim into trace.json so that the trace can be re-fed.
struct RunSpec {
  json source;
  std::string kind; // lasso | weber | abs1d | feasibility | custom
  std::optional<Problem> problem;
  std::optional<FeasibilityProblem> feasibility;
  RunConfig config;
  ReportSpec report;
  std::vector<std::string> warnings; // unknown keys
};

/// Parse and validate a config document. A trace.json document (with
/// metadata.config) is accepted in place of a config. Throws ConfigError
/// naming the offending field.
RunSpec parse_config(const json &doc);

/// Read a JSON file and parse it. Throws ConfigError on I/O or syntax errors.
RunSpec load_config(const std::filesystem::path &path);

// Individual builders, exposed for tests and bindings. `where` is the
// field path used in error messages.
SetPtr parse_set(const json &j, const std::string &where, std::size_t dim);
FunctionPtr parse_function(const json &j, const std::string &where,
                           std::size_t dim);
StepsizeSchedule parse_stepsize(const json &j, const std::string &where);

struct RunOutcome {
  Trace trace;
  /// Present for constant stepsizes on engine runs.
  std::optional<BoundReport> bounds;
  /// Why `bounds` is absent.
  std::string bounds_note;
};

/// Execute a parsed run (engine or feasibility solver).
RunOutcome execute(const RunSpec &spec);

/// Bound report for a finished engine run: empirical c from the oracle log,
/// dist0 from X* when known, observed gap from F* when known.
std::optional<BoundReport> report_bounds(const Problem &problem,
                                         const RunConfig &config,
                                         const Trace &trace, double epsilon,
                                         std::string *note = nullptr);

} // namespace incrprox
