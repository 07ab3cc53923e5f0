// Random instance generators shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "euq/core.h"

namespace euq::testing {

/// Random point on the simplex; `sparsity` is the chance an entry is zeroed
/// before normalization (kept at least one nonzero entry).
inline std::vector<double> random_simplex(std::mt19937_64& rng, int k_count,
                                          double sparsity = 0.0) {
  std::exponential_distribution<double> gamma1(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(k_count);
  double total = 0.0;
  for (double& v : p) {
    v = unit(rng) < sparsity ? 0.0 : gamma1(rng);
    total += v;
  }
  if (total == 0.0) {
    p[std::uniform_int_distribution<int>(0, k_count - 1)(rng)] = 1.0;
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

inline PredictionSet random_set(std::mt19937_64& rng, int k_count, int m_count,
                                double sparsity = 0.0) {
  std::vector<ProbabilityVector> members;
  for (int m = 0; m < m_count; ++m) {
    members.push_back(ProbabilityVector::FromRaw(random_simplex(rng, k_count, sparsity)));
  }
  return PredictionSet(std::move(members));
}

/// Intervals induced by a random prediction set, so they are always feasible.
inline ProbabilityIntervals random_intervals(std::mt19937_64& rng, int k_count,
                                             int max_members = 6) {
  const int m_count = std::uniform_int_distribution<int>(1, max_members)(rng);
  return build_intervals(random_set(rng, k_count, m_count, 0.2));
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace euq::testing
