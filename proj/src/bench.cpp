#include "incrprox/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "incrprox/apps.hpp"
#include "incrprox/sets.hpp"

namespace incrprox {

namespace {

std::vector<double> iota_points(std::size_t m) {
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i)
    b[i] = static_cast<double>(i + 1);
  return b;
}

json criterion(const std::string &name, bool passed, const std::string &detail) {
  return {{"name", name}, {"passed", passed}, {"detail", detail}};
}

// abs1d, m = 10, b_i = i, alpha = 0.01, 1e5 iterations.
constexpr std::size_t kBoundsM = 10;
constexpr double kBoundsAlpha = 0.01;
constexpr std::uint64_t kBoundsIters = 100000;

Trace bounds_run(OrderingKind ordering, std::uint64_t seed) {
  const Problem p = onedim_abs_benchmark(iota_points(kBoundsM));
  RunConfig cfg;
  cfg.variant = Variant::ProxThenSubgrad;
  cfg.ordering = ordering;
  cfg.seed = seed;
  cfg.schedule = StepsizeSchedule::constant(kBoundsAlpha);
  cfg.limits.max_iters = kBoundsIters;
  cfg.limits.eval_stride = 1;
  cfg.limits.record_stride = kBoundsIters;
  return run(p, cfg);
}

json bounds_seed(std::uint64_t seed) {
  const Problem p = onedim_abs_benchmark(iota_points(kBoundsM));
  const Trace t = bounds_run(OrderingKind::Uniform, seed);
  return {{"seed", seed},
          {"ordering", "uniform"},
          {"status", t.status == RunStatus::Completed ? "completed" : "solver_failure"},
          {"best_value", t.best_value},
          {"gap", t.best_value - *p.optimal_value},
          {"c_empirical", t.oracle_log.max_norm}};
}

json feasibility_seed(std::uint64_t seed) {
  FeasibilityProblem fp;
  fp.dim = 2;
  fp.sets = random_halfspaces_2d(seed);
  fp.gamma = 1e6;
  SplitMix64 rng(seed ^ 0x5bd1e995ULL);
  Vector x0(2);
  x0 << 10.0 * (2.0 * rng.uniform() - 1.0), 10.0 * (2.0 * rng.uniform() - 1.0);
  RunConfig cfg;
  cfg.schedule = StepsizeSchedule::constant(1.0);
  cfg.x0 = x0;
  cfg.limits.max_iters = 10000;
  cfg.limits.eval_stride = 1;
  cfg.limits.record_stride = 10000;
  const Trace t = run_feasibility(fp, cfg);
  std::optional<std::uint64_t> reached;
  for (const auto &r : t.rows)
    if (r.dist_opt && *r.dist_opt <= 1e-6) {
      reached = r.k;
      break;
    }
  const double final_dist = fp.max_distance(t.final_point);
  return {{"seed", seed},
          {"final_max_distance", final_dist},
          {"steps_to_1e-6", reached ? json(*reached) : json(nullptr)},
          {"passed", final_dist <= 1e-6 && reached.has_value()}};
}

json convergence_seed(std::uint64_t seed) {
  const Problem p = onedim_abs_benchmark(iota_points(5));
  RunConfig cfg;
  cfg.ordering = seed == 0 ? OrderingKind::Cyclic : OrderingKind::Shuffle;
  cfg.seed = seed;
  cfg.schedule = StepsizeSchedule::harmonic(1.0, 1.0);
  cfg.schedule.cycle_locked = true;
  cfg.limits.max_iters = 1000000;
  cfg.limits.record_stride = 1000000;
  cfg.limits.eval_stride = 1000000;
  const Trace t = run(p, cfg);
  const double fgap = std::abs(*t.final_value - *p.optimal_value);
  const double dist = p.optimal_set->distance(t.final_point);
  return {{"seed", seed},
          {"ordering", to_string(cfg.ordering)},
          {"final_value_gap", fgap},
          {"final_distance", dist},
          {"passed", fgap <= 1e-2 && dist <= 1e-2}};
}

template <class F>
std::vector<json> fan_out(const std::vector<std::uint64_t> &seeds,
                          std::size_t threads, F &&work) {
  std::vector<json> results(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < seeds.size();) {
      try {
        results[i] = work(seeds[i]);
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(threads, seeds.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (!errors[i].empty())
      throw Error("bench seed " + std::to_string(seeds[i]) + ": " + errors[i]);
  return results;
}

} // namespace

std::vector<std::string> bench_suites() {
  return {"bounds", "feasibility", "convergence"};
}

std::vector<std::uint64_t> parse_seeds(const std::string &text) {
  auto parse_one = [&](const std::string &s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("--seeds: expected a count or a comma-separated list, got '" +
                        text + "'");
    return std::stoull(s);
  };
  std::vector<std::uint64_t> out;
  if (text.find(',') == std::string::npos) {
    const auto n = parse_one(text);
    if (n == 0)
      throw ConfigError("--seeds: count must be positive");
    for (std::uint64_t s = 0; s < n; ++s)
      out.push_back(s);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    out.push_back(parse_one(text.substr(start, end - start)));
    if (end == std::string::npos)
      break;
    start = end + 1;
  }
  return out;
}

std::size_t bench_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("INCRPROX_THREADS")) {
    char *end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0)
      n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
  }
  return n;
}

std::vector<SetPtr> random_halfspaces_2d(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  Vector p(2);
  p << 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0;
  std::vector<SetPtr> sets;
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    Vector a(2);
    a << std::cos(theta), std::sin(theta);
    // p sits strictly inside every halfspace
    const double slack = 0.05 + 0.5 * rng.uniform();
    sets.push_back(make_halfspace(a, a.dot(p) + slack));
  }
  return sets;
}

json run_bench(const std::string &suite, const std::vector<std::uint64_t> &seeds,
               std::size_t threads) {
  if (suite.empty())
    throw ConfigError("--suite: suite name is empty");
  if (seeds.empty())
    throw ConfigError("--seeds: no seeds given");
  json out = {{"suite", suite}, {"seeds", seeds}};
  json criteria = json::array();

  if (suite == "bounds") {
    const Problem p = onedim_abs_benchmark(iota_points(kBoundsM));
    BoundInputs in{kBoundsAlpha, kBoundsM, 1.0, 0.0, 1e-2};
    const double cyc = cyclic_error_bound(in);
    const double rnd = randomized_error_bound(in);
    const double ratio_expected = cyclic_beta(kBoundsM) * kBoundsM / 5.0;

    const Trace ct = bounds_run(OrderingKind::Cyclic, 0);
    const double cyc_gap = ct.best_value - *p.optimal_value;
    auto runs = fan_out(seeds, threads, bounds_seed);
    bool all_rnd = true, all_below_cyc = true;
    double worst = 0.0;
    for (const auto &r : runs) {
      const double g = r["gap"].get<double>();
      worst = std::max(worst, g);
      all_rnd = all_rnd && g <= rnd;
      all_below_cyc = all_below_cyc && g <= cyc;
    }
    out["bounds"] = {{"c", 1.0},
                     {"alpha", kBoundsAlpha},
                     {"m", kBoundsM},
                     {"cyclic_bound", cyc},
                     {"randomized_bound", rnd},
                     {"ratio", cyc / rnd},
                     {"ratio_expected", ratio_expected}};
    out["cyclic_gap"] = cyc_gap;
    out["runs"] = runs;
    criteria.push_back(criterion("cyclic_gap_within_cyclic_bound", cyc_gap <= cyc,
                                 "gap " + std::to_string(cyc_gap)));
    criteria.push_back(criterion("randomized_gaps_within_randomized_bound", all_rnd,
                                 "worst gap " + std::to_string(worst)));
    criteria.push_back(criterion(
        "bound_ratio_and_separation",
        std::abs(cyc / rnd - ratio_expected) <= 1e-12 * ratio_expected &&
            all_below_cyc,
        "ratio " + std::to_string(cyc / rnd)));
  } else if (suite == "feasibility") {
    auto runs = fan_out(seeds, threads, feasibility_seed);
    bool ok = true;
    for (const auto &r : runs)
      ok = ok && r["passed"].get<bool>();
    out["runs"] = runs;
    criteria.push_back(criterion("final_distance_within_1e-6", ok,
                                 "three random halfspaces per seed"));
  } else if (suite == "convergence") {
    auto runs = fan_out(seeds, threads, convergence_seed);
    bool ok = true;
    for (const auto &r : runs)
      ok = ok && r["passed"].get<bool>();
    out["runs"] = runs;
    criteria.push_back(criterion("diminishing_stepsize_convergence", ok,
                                 "harmonic(1,1), 1e6 iterations"));
  } else {
    throw ConfigError("--suite: unknown suite '" + suite +
                      "' (expected bounds, feasibility or convergence)");
  }

  bool all = true;
  for (const auto &c : criteria)
    all = all && c["passed"].get<bool>();
  out["criteria"] = criteria;
  out["all_passed"] = all;
  return out;
}

} // namespace incrprox
