#include "euq/reference.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "euq/errors.h"

namespace euq::reference {

SimplexGrid SimplexGrid::Default(int num_classes) {
  if (num_classes <= 2) return {num_classes, 0.001};
  if (num_classes == 3) return {num_classes, 0.005};
  return {num_classes, 0.02};
}

int SimplexGrid::units() const { return static_cast<int>(std::lround(1.0 / step)); }

namespace {

bool feasible(const std::vector<double>& p, const std::optional<ProbabilityIntervals>& iv) {
  return !iv.has_value() || iv->contains(p, 1e-12);
}

}  // namespace

GridOptimum grid_minimize(const Objective& objective, const SimplexGrid& grid,
                          const std::optional<ProbabilityIntervals>& iv) {
  const int k_count = grid.num_classes;
  if (k_count < 2) throw OracleError("grid needs at least 2 classes");
  if (iv.has_value() && static_cast<int>(iv->num_classes()) != k_count) {
    throw OracleError("grid and intervals disagree on the class count");
  }
  const int n = grid.units();
  const double unit = 1.0 / n;

  GridOptimum best;
  bool found = false;
  std::vector<int> counts(k_count, 0);
  std::vector<double> p(k_count);
  auto to_point = [&](const std::vector<int>& c) {
    for (int k = 0; k < k_count; ++k) p[k] = c[k] * unit;
    return p;
  };

  // Compositions of n into k_count parts in lexicographic order: the first
  // k_count - 1 parts are free, the last takes the remainder.
  std::function<void(int, int)> walk = [&](int k, int left) {
    if (k == k_count - 1) {
      counts[k] = left;
      const auto& point = to_point(counts);
      if (!feasible(point, iv)) return;
      const double v = objective(point);
      ++best.evaluated;
      if (!found || v < best.value) {
        found = true;
        best.value = v;
        best.argmin = point;
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[k] = c;
      walk(k + 1, left - c);
    }
  };
  walk(0, n);
  if (!found) {
    throw OracleError("no lattice point at this resolution lies in the credal set");
  }

  std::vector<double> q = best.argmin;
  for (int from = 0; from < k_count; ++from) {
    for (int to = 0; to < k_count; ++to) {
      if (from == to || best.argmin[from] < unit / 2) continue;
      q = best.argmin;
      q[from] -= unit;
      q[to] += unit;
      if (q[from] < 0.0) q[from] = 0.0;
      best.neighbor_variation =
          std::max(best.neighbor_variation, std::abs(objective(q) - best.value));
    }
  }
  return best;
}

double auroc_pair_count(const std::vector<double>& id_scores,
                        const std::vector<double>& ood_scores) {
  double favourable = 0.0;
  for (double i : id_scores) {
    for (double o : ood_scores) {
      if (o > i) {
        favourable += 1.0;
      } else if (o == i) {
        favourable += 0.5;
      }
    }
  }
  return favourable /
         (static_cast<double>(id_scores.size()) * static_cast<double>(ood_scores.size()));
}

double wilcoxon_exact_enum(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw OracleError("unpaired samples");
  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    if (d == 0.0) continue;
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  const int n = static_cast<int>(magnitudes.size());
  if (n == 0) return 1.0;
  if (n > 16) throw OracleError("sign enumeration is limited to 16 differences");

  // Doubled midrank: 2 * #smaller + #equal + 1 (the value itself included).
  std::vector<long> doubled(n);
  long observed = 0;
  for (int i = 0; i < n; ++i) {
    long smaller = 0;
    long equal = 0;
    for (int j = 0; j < n; ++j) {
      if (magnitudes[j] < magnitudes[i]) ++smaller;
      if (magnitudes[j] == magnitudes[i]) ++equal;
    }
    doubled[i] = 2 * smaller + equal + 1;
    if (positive[i]) observed += doubled[i];
  }
  std::uint64_t at_least = 0;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t signs = 0; signs < patterns; ++signs) {
    long w = 0;
    for (int i = 0; i < n; ++i) {
      if ((signs >> i) & 1u) w += doubled[i];
    }
    if (w >= observed) ++at_least;
  }
  return std::ldexp(static_cast<double>(at_least), -n);
}

std::vector<double> moebius_mass_direct(const ProbabilityIntervals& iv) {
  const int k_count = static_cast<int>(iv.num_classes());
  if (k_count > 12) throw OracleError("direct Moebius inversion is limited to K <= 12");
  const std::uint64_t size = std::uint64_t{1} << k_count;
  std::vector<double> masses(size, 0.0);
  for (std::uint64_t q = 0; q < size; ++q) {
    // Walk every submask a of q, including q itself and the empty set.
    std::uint64_t a = q;
    while (true) {
      const int sign = (std::popcount(q & ~a) % 2 == 0) ? 1 : -1;
      masses[q] += sign * lower_probability(iv, ClassSubset{a, k_count});
      if (a == 0) break;
      a = (a - 1) & q;
    }
  }
  return masses;
}

double generalized_hartley_direct(const ProbabilityIntervals& iv) {
  const std::vector<double> masses = moebius_mass_direct(iv);
  double gh = 0.0;
  for (std::uint64_t q = 0; q < masses.size(); ++q) {
    const int c = std::popcount(q);
    if (c >= 2) gh += masses[q] * std::log2(static_cast<double>(c));
  }
  return gh;
}

}  // namespace euq::reference
