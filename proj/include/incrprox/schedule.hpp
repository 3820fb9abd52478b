#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace incrprox {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed algorithm, so seeded index
/// streams are identical on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) by 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Stepsizes
// ---------------------------------------------------------------------------

enum class StepsizeKind { Constant, Harmonic, Table };

/// alpha_k. Constant(alpha), Harmonic(a, b) = a / (k + b), or a custom table
/// (the last entry repeats past the end).
///
/// When cycle-locked, the value used throughout a cycle is the one computed
/// at the cycle's first iteration.
struct StepsizeSchedule {
  StepsizeKind kind = StepsizeKind::Constant;
  double alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> table;
  /// Unset: resolved from the ordering (locked for cyclic/shuffle).
  std::optional<bool> cycle_locked;

  static StepsizeSchedule constant(double alpha);
  static StepsizeSchedule harmonic(double a, double b);
  static StepsizeSchedule custom(std::vector<double> table);

  /// Throws ParameterError on nonpositive parameters.
  void validate() const;

  /// Raw value at iteration k, ignoring cycle locking.
  double value_at(std::uint64_t k) const;

  /// Diminishing with sum alpha_k = inf and sum alpha_k^2 < inf. True for
  /// harmonic schedules by construction.
  bool square_summable_divergent() const { return kind == StepsizeKind::Harmonic; }

  std::string describe() const;
};

/// Stateful stepsize generator honoring the cycle-lock convention.
class StepsizeSequence {
public:
  StepsizeSequence(StepsizeSchedule schedule, bool cycle_locked);

  /// alpha_k. `cycle_start` marks the first iteration of a cycle; a locked
  /// sequence refreshes its value only there.
  double next(std::uint64_t k, bool cycle_start);

  bool cycle_locked() const { return locked_; }

private:
  StepsizeSchedule schedule_;
  bool locked_;
  std::optional<double> frozen_;
};

/// Pure form of StepsizeSequence for a cyclic run with m components.
double next_stepsize(const StepsizeSchedule &s, std::uint64_t k,
                     std::uint64_t m, bool cycle_locked);

// ---------------------------------------------------------------------------
// Orderings
// ---------------------------------------------------------------------------

enum class OrderingKind { Cyclic, Shuffle, Uniform };

std::string to_string(OrderingKind kind);
/// Accepts "cyclic", "shuffle" (or "shuffle_per_cycle"), "uniform" (or
/// "uniform_random"). Throws ConfigError otherwise.
OrderingKind ordering_from_string(const std::string &name);

/// Component-index stream. Indices are 1-based, in 1..m.
///
/// Owns mutable RNG state: one instance per run.
class OrderingPolicy {
public:
  OrderingPolicy(OrderingKind kind, std::size_t m, std::uint64_t seed = 0);

  /// Index for iteration k. Must be called with k = 0, 1, 2, ... in order.
  std::size_t next_index(std::uint64_t k);

  OrderingKind kind() const { return kind_; }
  std::size_t size() const { return m_; }
  std::uint64_t seed() const { return seed_; }

  /// Cycle locking applies by default to the cycle-based orders.
  bool default_cycle_locked() const { return kind_ != OrderingKind::Uniform; }

private:
  OrderingKind kind_;
  std::size_t m_;
  std::uint64_t seed_;
  SplitMix64 rng_;
  std::vector<std::size_t> perm_;
};

} // namespace incrprox
