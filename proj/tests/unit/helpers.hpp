#pragma once

#include <initializer_list>
#include <vector>

#include "incrprox/core.hpp"
#include "incrprox/schedule.hpp"
#include "oracle.hpp"

namespace testing {

using incrprox::Vector;

inline Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v)
    x[i++] = d;
  return x;
}

inline Vector random_vector(incrprox::SplitMix64 &rng, Eigen::Index n,
                            double scale = 1.0) {
  Vector x(n);
  for (Eigen::Index j = 0; j < n; ++j)
    x[j] = scale * (2.0 * rng.uniform() - 1.0);
  return x;
}

inline oracle::Point to_point(const Vector &x) {
  return oracle::Point(x.data(), x.data() + x.size());
}

inline Vector from_point(const oracle::Point &p) {
  Vector x(static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j)
    x[static_cast<Eigen::Index>(j)] = p[j];
  return x;
}

} // namespace testing
