#include "euq/dist_measures.h"

#include <algorithm>
#include <cmath>

#include "euq/errors.h"

namespace euq {

UncertaintyScore mutual_information(const PredictionSet& b) {
  if (b.members_agree()) return {0.0, MeasureId::kMI};
  const MeanPrediction mean = mean_prediction(b);
  std::vector<double> member_entropy;
  member_entropy.reserve(b.num_members());
  for (const auto& p : b.members()) member_entropy.push_back(entropy_bits(p.values()));
  const double expected = order_independent_sum(std::move(member_entropy)) /
                          static_cast<double>(b.num_members());
  return UncertaintyScore::Make(entropy_bits(mean.mean.values()) - expected,
                                MeasureId::kMI);
}

UncertaintyScore label_wise_variance(const PredictionSet& b) {
  if (b.members_agree()) return {0.0, MeasureId::kLWV};
  const MeanPrediction mean = mean_prediction(b);
  const double m_count = static_cast<double>(b.num_members());
  std::vector<double> per_class;
  std::vector<double> squares(b.num_members());
  for (std::size_t k = 0; k < b.num_classes(); ++k) {
    for (std::size_t m = 0; m < b.num_members(); ++m) {
      const double d = b.prob(m, k) - mean.mean[k];
      squares[m] = d * d;
    }
    per_class.push_back(order_independent_sum(squares) / m_count);
  }
  return UncertaintyScore::Make(order_independent_sum(std::move(per_class)),
                                MeasureId::kLWV);
}

L1Center l1_center(const PredictionSet& b) {
  const std::size_t k_count = b.num_classes();
  const std::size_t m_count = b.num_members();
  if (b.members_agree()) {
    const auto v = b.member(0).values();
    return {std::vector<double>(v.begin(), v.end()), 0.0};
  }

  // sorted[k] holds the member values of class k in ascending order.
  std::vector<std::vector<double>> sorted(k_count, std::vector<double>(m_count));
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t m = 0; m < m_count; ++m) sorted[k][m] = b.prob(m, k);
    std::sort(sorted[k].begin(), sorted[k].end());
  }
  auto segment_start = [&](std::size_t k, std::size_t level) {
    return level == 0 ? 0.0 : sorted[k][level - 1];
  };
  auto segment_end = [&](std::size_t k, std::size_t level) {
    return level == m_count ? 1.0 : sorted[k][level];
  };

  // Segment `level` of every class has slope 2 * level - M, so filling whole
  // levels in order is the greedy (dual) allocation of the unit mass.
  std::vector<double> center(k_count, 0.0);
  std::vector<double> lengths(k_count);
  double remaining = 1.0;
  for (std::size_t level = 0; level <= m_count; ++level) {
    for (std::size_t k = 0; k < k_count; ++k) {
      lengths[k] = segment_end(k, level) - segment_start(k, level);
    }
    const double level_length = order_independent_sum(lengths);
    if (level_length <= 0.0) continue;
    if (level_length <= remaining) {
      for (std::size_t k = 0; k < k_count; ++k) center[k] = segment_end(k, level);
      remaining -= level_length;
      continue;
    }
    const double fraction = remaining / level_length;
    for (std::size_t k = 0; k < k_count; ++k) {
      center[k] = segment_start(k, level) + fraction * lengths[k];
    }
    remaining = 0.0;
    break;
  }
  if (remaining > 1e-9) {
    throw NumericalError("L1 center allocation did not exhaust the unit mass");
  }

  std::vector<double> distances;
  distances.reserve(k_count * m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t k = 0; k < k_count; ++k) {
      distances.push_back(std::abs(b.prob(m, k) - center[k]));
    }
  }
  return {std::move(center), order_independent_sum(std::move(distances))};
}

UncertaintyScore wasserstein_eu(const PredictionSet& b, WdPrefactor prefactor) {
  const double total = l1_center(b).total_distance;
  const double scale = prefactor == WdPrefactor::kHalfL1 ? 0.5 : 1.0;
  return UncertaintyScore::Make(scale * total, MeasureId::kWD);
}

double wasserstein_binary_closed_form(const PredictionSet& b) {
  if (b.num_classes() != 2) {
    throw InputError("the closed-form Wasserstein measure needs K = 2");
  }
  std::vector<double> x(b.num_members());
  for (std::size_t m = 0; m < x.size(); ++m) x[m] = b.prob(m, 0);
  std::sort(x.begin(), x.end());
  const double median = x[(x.size() - 1) / 2];
  std::vector<double> deviations;
  for (double v : x) deviations.push_back(std::abs(v - median));
  return order_independent_sum(std::move(deviations));
}

}  // namespace euq
