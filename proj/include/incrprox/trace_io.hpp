#pragma once

#include <filesystem>
#include <string>

#include "incrprox/config.hpp"

namespace incrprox {

/// Header of every trace CSV.
inline constexpr const char *kCsvHeader = "k,i_k,alpha_k,F,dist_opt,wall_ms";

/// Doubles are printed with %.17g so they round-trip; absent values are
/// empty cells.
std::string format_double(double v);
std::string trace_csv(const Trace &trace);

/// {"metadata": {..., "config": <source config>}, "rows": [...]}.
json trace_json(const Trace &trace, const json &config_source);

json bounds_json(const RunOutcome &outcome);

/// Write trace.csv / trace.json (per the report flags) and bounds.json into
/// `dir`, creating it if needed. Throws Error on I/O failure.
void write_outputs(const RunSpec &spec, const RunOutcome &outcome,
                   const std::filesystem::path &dir);

void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace incrprox
