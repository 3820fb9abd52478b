#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incrprox/config.hpp"

namespace incrprox {

/// Names accepted by run_bench.
std::vector<std::string> bench_suites();

/// "N" means seeds 0..N-1; "a,b,c" is an explicit list. Throws ConfigError.
std::vector<std::uint64_t> parse_seeds(const std::string &text);

/// Worker count: hardware concurrency capped by INCRPROX_THREADS.
std::size_t bench_threads();

/// Run `suite` once per seed on up to `threads` workers. Results are merged
/// in seed order, so the output does not depend on the thread count.
///
/// Output: {"suite", "seeds", "runs": [...per seed...], "bounds": {...},
/// "criteria": [{"name", "passed", "detail"}], "all_passed"}.
/// Throws ConfigError on an unknown or empty suite name or empty seed list.
json run_bench(const std::string &suite, const std::vector<std::uint64_t> &seeds,
               std::size_t threads);

/// Three random halfspaces in the plane sharing an interior point.
std::vector<SetPtr> random_halfspaces_2d(std::uint64_t seed, std::size_t count = 3);

} // namespace incrprox
