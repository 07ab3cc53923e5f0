#include "euq/credal_measures.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "euq/errors.h"

namespace euq {

namespace {

void check_subset_cap(const ProbabilityIntervals& iv, int subset_cap) {
  const int k_count = static_cast<int>(iv.num_classes());
  if (k_count > subset_cap || k_count > 62) {
    std::ostringstream msg;
    msg << "subset enumeration over " << k_count
        << " classes exceeds the cap of " << subset_cap;
    throw EnumerationLimitError(msg.str());
  }
}

double binary_entropy(double x) {
  const double p[2] = {x, 1.0 - x};
  return entropy_bits(p);
}

}  // namespace

std::vector<double> max_entropy_distribution(const ProbabilityIntervals& iv) {
  const std::size_t k_count = iv.num_classes();
  auto mass_at = [&](double t) {
    std::vector<double> q(k_count);
    for (std::size_t k = 0; k < k_count; ++k) q[k] = std::clamp(t, iv.lower(k), iv.upper(k));
    return order_independent_sum(std::move(q));
  };

  std::vector<double> breakpoints;
  breakpoints.reserve(2 * k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    breakpoints.push_back(iv.lower(k));
    breakpoints.push_back(iv.upper(k));
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  double level = breakpoints.back();
  double previous_t = breakpoints.front();
  double previous_mass = mass_at(previous_t);
  if (previous_mass >= 1.0) {
    level = previous_t;
  } else {
    for (std::size_t j = 1; j < breakpoints.size(); ++j) {
      const double t = breakpoints[j];
      const double mass = mass_at(t);
      if (mass >= 1.0) {
        // The mass is linear between consecutive breakpoints.
        level = previous_t + (1.0 - previous_mass) * (t - previous_t) /
                                 (mass - previous_mass);
        break;
      }
      previous_t = t;
      previous_mass = mass;
    }
  }

  std::vector<double> q(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    q[k] = std::clamp(level, iv.lower(k), iv.upper(k));
  }
  return q;
}

double max_entropy(const ProbabilityIntervals& iv) {
  return entropy_bits(max_entropy_distribution(iv));
}

double min_entropy(const ProbabilityIntervals& iv, int vertex_cap) {
  double best = std::log2(static_cast<double>(iv.num_classes()));
  for (const auto& v : credal_vertices(iv, vertex_cap)) {
    best = std::min(best, entropy_bits(v.values()));
  }
  return best;
}

UncertaintyScore entropy_difference(const ProbabilityIntervals& iv, int vertex_cap) {
  const double lo = min_entropy(iv, vertex_cap);
  const double hi = max_entropy(iv);
  return UncertaintyScore::Make(hi - lo, MeasureId::kHDiff);
}

double entropy_difference_binary(double lo, double hi) {
  const double h_lo = binary_entropy(lo);
  const double h_hi = binary_entropy(hi);
  double upper = std::max(h_lo, h_hi);
  if (lo <= 0.5 && 0.5 <= hi) upper = std::max(upper, 1.0);
  return upper - std::min(h_lo, h_hi);
}

std::vector<double> lower_probability_table(const ProbabilityIntervals& iv,
                                            int subset_cap) {
  check_subset_cap(iv, subset_cap);
  const int k_count = static_cast<int>(iv.num_classes());
  const std::uint64_t full = (std::uint64_t{1} << k_count) - 1;
  const std::size_t size = static_cast<std::size_t>(full) + 1;

  std::vector<double> lower_sum(size, 0.0);
  std::vector<double> upper_sum(size, 0.0);
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    const int k = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    lower_sum[mask] = lower_sum[rest] + iv.lower(k);
    upper_sum[mask] = upper_sum[rest] + iv.upper(k);
  }

  std::vector<double> nu(size, 0.0);
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const double v = std::max(lower_sum[mask], 1.0 - upper_sum[full ^ mask]);
    nu[mask] = std::clamp(v, 0.0, 1.0);
  }
  nu[full] = 1.0;
  return nu;
}

MoebiusMass moebius_mass(const ProbabilityIntervals& iv, int subset_cap) {
  MoebiusMass result;
  result.num_classes = static_cast<int>(iv.num_classes());
  result.masses = lower_probability_table(iv, subset_cap);
  // In-place inverse zeta transform over the subset lattice.
  auto& m = result.masses;
  for (int bit = 0; bit < result.num_classes; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    for (std::uint64_t mask = 0; mask < m.size(); ++mask) {
      if (mask & b) m[mask] -= m[mask ^ b];
    }
  }
  return result;
}

UncertaintyScore generalized_hartley(const ProbabilityIntervals& iv, int subset_cap) {
  const MoebiusMass mass = moebius_mass(iv, subset_cap);
  std::vector<double> by_cardinality(mass.num_classes + 1, 0.0);
  for (std::uint64_t q = 0; q < mass.masses.size(); ++q) {
    by_cardinality[std::popcount(q)] += mass.masses[q];
  }
  double gh = 0.0;
  for (int c = 2; c <= mass.num_classes; ++c) {
    gh += by_cardinality[c] * std::log2(static_cast<double>(c));
  }
  return UncertaintyScore::Make(gh, MeasureId::kGH);
}

UncertaintyScore max_mean_imprecision(const ProbabilityIntervals& iv, int subset_cap) {
  const std::vector<double> nu = lower_probability_table(iv, subset_cap);
  const int k_count = static_cast<int>(iv.num_classes());
  const std::uint64_t full = (std::uint64_t{1} << k_count) - 1;
  // Imprecision is symmetric under complement, so half the lattice suffices.
  const std::uint64_t half = std::uint64_t{1} << (k_count - 1);
  double best = 0.0;
  for (std::uint64_t a = 0; a < half; ++a) {
    best = std::max(best, (1.0 - nu[full ^ a]) - nu[a]);
  }
  return UncertaintyScore::Make(best, MeasureId::kMMI);
}

}  // namespace euq
