#include "incrprox/schedule.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "incrprox/error.hpp"

namespace incrprox {

StepsizeSchedule StepsizeSchedule::constant(double alpha) {
  StepsizeSchedule s;
  s.kind = StepsizeKind::Constant;
  s.alpha = alpha;
  s.validate();
  return s;
}

StepsizeSchedule StepsizeSchedule::harmonic(double a, double b) {
  StepsizeSchedule s;
  s.kind = StepsizeKind::Harmonic;
  s.a = a;
  s.b = b;
  s.validate();
  return s;
}

StepsizeSchedule StepsizeSchedule::custom(std::vector<double> table) {
  StepsizeSchedule s;
  s.kind = StepsizeKind::Table;
  s.table = std::move(table);
  s.validate();
  return s;
}

void StepsizeSchedule::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  switch (kind) {
  case StepsizeKind::Constant:
    if (!positive(alpha))
      throw ParameterError("stepsize.alpha must be positive");
    break;
  case StepsizeKind::Harmonic:
    if (!positive(a))
      throw ParameterError("stepsize.a must be positive");
    if (!positive(b))
      throw ParameterError("stepsize.b must be positive");
    break;
  case StepsizeKind::Table:
    if (table.empty())
      throw ParameterError("stepsize.table must be nonempty");
    for (double v : table)
      if (!positive(v))
        throw ParameterError("stepsize.table entries must be positive");
    break;
  }
}

double StepsizeSchedule::value_at(std::uint64_t k) const {
  switch (kind) {
  case StepsizeKind::Constant:
    return alpha;
  case StepsizeKind::Harmonic:
    return a / (static_cast<double>(k) + b);
  case StepsizeKind::Table:
    return k < table.size() ? table[k] : table.back();
  }
  return alpha;
}

std::string StepsizeSchedule::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
  case StepsizeKind::Constant:
    os << "constant(" << alpha << ")";
    break;
  case StepsizeKind::Harmonic:
    os << "harmonic(" << a << "," << b << ")";
    break;
  case StepsizeKind::Table:
    os << "table(" << table.size() << ")";
    break;
  }
  return os.str();
}

StepsizeSequence::StepsizeSequence(StepsizeSchedule schedule, bool cycle_locked)
    : schedule_(std::move(schedule)), locked_(cycle_locked) {
  schedule_.validate();
}

double StepsizeSequence::next(std::uint64_t k, bool cycle_start) {
  if (!locked_)
    return schedule_.value_at(k);
  if (cycle_start || !frozen_)
    frozen_ = schedule_.value_at(k);
  return *frozen_;
}

double next_stepsize(const StepsizeSchedule &s, std::uint64_t k,
                     std::uint64_t m, bool cycle_locked) {
  s.validate();
  if (!cycle_locked || m == 0)
    return s.value_at(k);
  return s.value_at(k - k % m);
}

std::string to_string(OrderingKind kind) {
  switch (kind) {
  case OrderingKind::Cyclic:
    return "cyclic";
  case OrderingKind::Shuffle:
    return "shuffle";
  case OrderingKind::Uniform:
    return "uniform";
  }
  return "cyclic";
}

OrderingKind ordering_from_string(const std::string &name) {
  if (name == "cyclic")
    return OrderingKind::Cyclic;
  if (name == "shuffle" || name == "shuffle_per_cycle")
    return OrderingKind::Shuffle;
  if (name == "uniform" || name == "uniform_random")
    return OrderingKind::Uniform;
  throw ConfigError("algorithm.ordering: unknown ordering '" + name + "'");
}

OrderingPolicy::OrderingPolicy(OrderingKind kind, std::size_t m,
                               std::uint64_t seed)
    : kind_(kind), m_(m), seed_(seed), rng_(seed) {
  if (m_ == 0)
    throw ConfigError("ordering: component count must be positive");
  perm_.resize(m_);
  std::iota(perm_.begin(), perm_.end(), std::size_t{1});
}

std::size_t OrderingPolicy::next_index(std::uint64_t k) {
  switch (kind_) {
  case OrderingKind::Cyclic:
    return static_cast<std::size_t>(k % m_) + 1;
  case OrderingKind::Shuffle:
    if (k % m_ == 0) {
      // Fisher-Yates on the previous permutation.
      for (std::size_t i = m_ - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng_.below(i + 1));
        std::swap(perm_[i], perm_[j]);
      }
    }
    return perm_[static_cast<std::size_t>(k % m_)];
  case OrderingKind::Uniform:
    return static_cast<std::size_t>(rng_.below(m_)) + 1;
  }
  return 1;
}

} // namespace incrprox
