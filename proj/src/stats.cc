#include "euq/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "euq/errors.h"

namespace euq {

std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

namespace {

// Upper tail P(W+ >= observed) under the sign-flip null, by counting sign
// patterns over doubled (integer) ranks.
double exact_upper_tail(const std::vector<double>& ranks, double w_plus) {
  std::vector<int> doubled;
  int total = 0;
  for (double r : ranks) {
    doubled.push_back(static_cast<int>(std::lround(2.0 * r)));
    total += doubled.back();
  }
  std::vector<std::uint64_t> count(total + 1, 0);
  count[0] = 1;
  int reach = 0;
  for (int r : doubled) {
    for (int s = reach; s >= 0; --s) {
      if (count[s] != 0) count[s + r] += count[s];
    }
    reach += r;
  }
  const int observed = static_cast<int>(std::lround(2.0 * w_plus));
  std::uint64_t at_least = 0;
  for (int s = std::max(observed, 0); s <= total; ++s) at_least += count[s];
  return std::ldexp(static_cast<double>(at_least), -static_cast<int>(ranks.size()));
}

double normal_upper_tail(const std::vector<double>& ranks, double w_plus) {
  double mean = 0.0;
  double variance = 0.0;
  for (double r : ranks) {
    mean += r / 2.0;
    variance += r * r / 4.0;
  }
  const double z = (w_plus - mean - 0.5) / std::sqrt(variance);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace

WilcoxonResult wilcoxon_one_sided(const std::vector<double>& x,
                                  const std::vector<double>& y, double alpha,
                                  const WilcoxonOptions& options) {
  if (x.size() != y.size()) throw InputError("Wilcoxon test needs paired samples");
  if (x.size() < 2) throw InputError("Wilcoxon test needs at least 2 pairs");

  std::vector<double> diffs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diffs[i] = x[i] - y[i];

  std::vector<double> magnitudes;
  std::vector<bool> positive;
  std::vector<bool> zero;
  for (double d : diffs) {
    if (d == 0.0 && options.zeros == ZeroHandling::kDrop) continue;
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0.0);
    zero.push_back(d == 0.0);
  }
  const std::vector<double> all_ranks = midranks(magnitudes);
  std::vector<double> ranks;
  WilcoxonResult result;
  for (std::size_t i = 0; i < all_ranks.size(); ++i) {
    if (zero[i]) continue;
    ranks.push_back(all_ranks[i]);
    if (positive[i]) result.w_plus += all_ranks[i];
  }
  result.effective_n = static_cast<int>(ranks.size());
  if (ranks.empty()) {
    result.p_value = 1.0;
    result.significant = false;
    return result;
  }
  result.exact = result.effective_n <= options.exact_max_n;
  result.p_value = result.exact ? exact_upper_tail(ranks, result.w_plus)
                                : normal_upper_tail(ranks, result.w_plus);
  result.p_value = std::clamp(result.p_value, 0.0, 1.0);
  result.significant = result.p_value < alpha;
  return result;
}

std::string_view scope_name(Scope scope) {
  switch (scope) {
    case Scope::kIntraDistribution: return "intra-dist";
    case Scope::kIntraCredal: return "intra-credal";
    case Scope::kInter: return "inter";
    case Scope::kCustom: return "custom";
  }
  return "custom";
}

Scope parse_scope(std::string_view name) {
  if (name == "intra-dist") return Scope::kIntraDistribution;
  if (name == "intra-credal") return Scope::kIntraCredal;
  if (name == "inter") return Scope::kInter;
  throw InputError("unknown scope '" + std::string(name) +
                   "' (expected intra-dist, intra-credal or inter)");
}

std::vector<MeasureId> scope_measures(Scope scope) {
  switch (scope) {
    case Scope::kIntraDistribution:
      return {kDistributionMeasures.begin(), kDistributionMeasures.end()};
    case Scope::kIntraCredal:
      return {kCredalMeasures.begin(), kCredalMeasures.end()};
    case Scope::kInter:
      return {kAllMeasures.begin(), kAllMeasures.end()};
    case Scope::kCustom:
      return {};
  }
  return {};
}

void RunMatrix::validate() const {
  if (scores.empty()) throw InputError("run matrix has no measures");
  const std::size_t runs = scores.begin()->second.size();
  if (runs < 2) throw InputError("run matrix needs at least 2 runs");
  for (const auto& [measure, values] : scores) {
    if (values.size() != runs) {
      std::ostringstream msg;
      msg << "measure " << measure_name(measure) << " has " << values.size()
          << " runs, expected " << runs << " (unpaired design)";
      throw InputError(msg.str());
    }
  }
}

NetWinTable net_wins(const RunMatrix& matrix, const std::vector<MeasureId>& measures,
                     double alpha, Scope scope, const WilcoxonOptions& options) {
  matrix.validate();
  if (measures.size() < 2) throw InputError("net wins need at least 2 measures");
  for (MeasureId m : measures) {
    if (!matrix.scores.contains(m)) {
      throw InputError("run matrix has no scores for measure " +
                       std::string(measure_name(m)));
    }
  }
  NetWinTable table;
  table.scope = scope;
  table.measures = measures;
  for (MeasureId m : measures) {
    table.wins[m] = 0;
    table.losses[m] = 0;
  }
  for (MeasureId a : measures) {
    for (MeasureId b : measures) {
      if (a == b) continue;
      const WilcoxonResult r =
          wilcoxon_one_sided(matrix.scores.at(a), matrix.scores.at(b), alpha, options);
      table.p_values[{a, b}] = r.p_value;
      table.significant[{a, b}] = r.significant;
      if (r.significant) {
        ++table.wins[a];
        ++table.losses[b];
      }
    }
  }
  for (MeasureId m : measures) table.net[m] = table.wins[m] - table.losses[m];
  return table;
}

NetWinTable net_wins(const RunMatrix& matrix, Scope scope, double alpha,
                     const WilcoxonOptions& options) {
  return net_wins(matrix, scope_measures(scope), alpha, scope, options);
}

NetWinTable aggregate_across_models(const std::vector<NetWinTable>& tables) {
  if (tables.empty()) throw InputError("nothing to aggregate");
  NetWinTable total;
  total.scope = tables.front().scope;
  total.measures = tables.front().measures;
  for (MeasureId m : total.measures) {
    total.wins[m] = 0;
    total.losses[m] = 0;
    total.net[m] = 0;
  }
  for (const auto& t : tables) {
    if (t.scope != total.scope || t.measures != total.measures) {
      throw InputError("cannot aggregate tables with different scopes or measures");
    }
    for (MeasureId m : total.measures) {
      total.wins[m] += t.wins.at(m);
      total.losses[m] += t.losses.at(m);
      total.net[m] += t.net.at(m);
    }
  }
  return total;
}

}  // namespace euq
