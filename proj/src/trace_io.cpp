#include "incrprox/trace_io.hpp"

#include <cstdio>
#include <fstream>

namespace incrprox {

namespace {

json opt_json(const std::optional<double> &v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

json vector_json(const Vector &x) {
  json a = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    a.push_back(x[i]);
  return a;
}

} // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const Trace &trace) {
  std::string out = kCsvHeader;
  out += '\n';
  auto cell = [&out](const std::optional<double> &v) {
    if (v)
      out += format_double(*v);
  };
  for (const auto &r : trace.rows) {
    out += std::to_string(r.k);
    out += ',';
    if (r.index)
      out += std::to_string(*r.index);
    out += ',';
    cell(r.alpha);
    out += ',';
    cell(r.value);
    out += ',';
    cell(r.dist_opt);
    out += ',';
    cell(r.wall_ms);
    out += '\n';
  }
  return out;
}

json trace_json(const Trace &trace, const json &config_source) {
  const auto &m = trace.meta;
  json meta = {
      {"config", config_source},
      {"variant", m.variant},
      {"momentum_beta", m.momentum_beta},
      {"ordering", m.ordering},
      {"seed", m.seed},
      {"schedule", m.schedule},
      {"cycle_locked", m.cycle_locked},
      {"m", m.m},
      {"dim", m.dim},
      {"eval_stride", m.eval_stride},
      {"status", trace.status == RunStatus::Completed ? "completed"
                                                       : "solver_failure"},
      {"stop_reason", trace.stop_reason},
      {"iterations", trace.iterations},
      {"best_value", opt_json(trace.best_value)},
      {"final_value", opt_json(trace.final_value)},
      {"best_point", vector_json(trace.best_point)},
      {"final_point", vector_json(trace.final_point)},
      {"oracle_max_norm", trace.oracle_log.max_norm},
      {"oracle_count", trace.oracle_log.count},
  };
  if (!trace.message.empty())
    meta["message"] = trace.message;
  json rows = json::array();
  for (const auto &r : trace.rows) {
    json row = {{"k", r.k}};
    row["i_k"] = r.index ? json(*r.index) : json(nullptr);
    row["alpha_k"] = opt_json(r.alpha);
    row["F"] = opt_json(r.value);
    row["dist_opt"] = opt_json(r.dist_opt);
    row["wall_ms"] = opt_json(r.wall_ms);
    rows.push_back(std::move(row));
  }
  return {{"metadata", std::move(meta)}, {"rows", std::move(rows)}};
}

json bounds_json(const RunOutcome &outcome) {
  if (!outcome.bounds)
    return {{"available", false}, {"note", outcome.bounds_note}};
  const BoundReport &b = *outcome.bounds;
  json j = {
      {"available", true},
      {"alpha", b.inputs.alpha},
      {"m", b.inputs.m},
      {"c", b.inputs.c},
      {"c_is_empirical", b.c_is_empirical},
      {"epsilon", b.inputs.epsilon},
      {"cyclic_beta", cyclic_beta(b.inputs.m)},
      {"cyclic_bound", b.cyclic_bound},
      {"randomized_bound", b.randomized_bound},
  };
  if (b.cyclic_N) {
    j["dist0"] = b.inputs.dist0;
    j["cyclic_N"] = *b.cyclic_N;
    j["randomized_EN"] = *b.randomized_EN;
  } else {
    j["dist0"] = nullptr;
    j["cyclic_N"] = nullptr;
    j["randomized_EN"] = nullptr;
  }
  j["observed_gap"] = opt_json(b.observed_gap);
  return j;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out)
    throw Error("write failed for '" + path.string() + "'");
}

void write_outputs(const RunSpec &spec, const RunOutcome &outcome,
                   const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error("cannot create output directory '" + dir.string() +
                "': " + ec.message());
  if (spec.report.emit_csv)
    write_text(dir / "trace.csv", trace_csv(outcome.trace));
  if (spec.report.emit_json)
    write_text(dir / "trace.json",
               trace_json(outcome.trace, spec.source).dump(2) + "\n");
  write_text(dir / "bounds.json", bounds_json(outcome).dump(2) + "\n");
}

} // namespace incrprox
