/// @file stats.h
/// Pairwise one-sided Wilcoxon signed-rank tests and net-win rankings of
/// measures over repeated runs.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "euq/measures.h"

namespace euq {

/// How zero paired differences enter the signed-rank statistic.
enum class ZeroHandling {
  kDrop,   ///< Discard zeros before ranking (classic Wilcoxon).
  kPratt,  ///< Rank zeros with the rest, then discard their ranks.
};

struct WilcoxonOptions {
  ZeroHandling zeros = ZeroHandling::kDrop;
  /// Effective sample sizes up to this use the exact null distribution.
  int exact_max_n = 25;
};

struct WilcoxonResult {
  double p_value = 1.0;
  bool significant = false;
  /// Nonzero differences entering the statistic.
  int effective_n = 0;
  /// Sum of (mid)ranks of the positive differences.
  double w_plus = 0.0;
  bool exact = true;
};

/// Midranks (1-based) of the values, tied values sharing their average rank.
std::vector<double> midranks(const std::vector<double>& values);

/// Tests H1 "x is stochastically larger than y" on paired samples.
/// Significant iff p < alpha. All-zero differences give p = 1.
WilcoxonResult wilcoxon_one_sided(const std::vector<double>& x,
                                  const std::vector<double>& y, double alpha,
                                  const WilcoxonOptions& options = {});

enum class Scope { kIntraDistribution, kIntraCredal, kInter, kCustom };

std::string_view scope_name(Scope scope);
/// Accepts intra-dist, intra-credal, inter.
Scope parse_scope(std::string_view name);
/// Measures compared within a scope (empty for kCustom).
std::vector<MeasureId> scope_measures(Scope scope);

/// Per-run performance scores (AUARC or AUROC) of several measures on one
/// dataset, model and task. Every measure must have the same number of runs.
struct RunMatrix {
  std::string dataset;
  std::string model;
  std::string task;
  std::map<MeasureId, std::vector<double>> scores;

  /// Throws InputError on unpaired runs or fewer than 2 runs.
  void validate() const;
};

struct NetWinTable {
  Scope scope = Scope::kCustom;
  std::vector<MeasureId> measures;
  std::map<MeasureId, int> wins;
  std::map<MeasureId, int> losses;
  std::map<MeasureId, int> net;
  /// One-sided p-values keyed by (row beats column).
  std::map<std::pair<MeasureId, MeasureId>, double> p_values;
  /// Ordered pairs whose test was significant.
  std::map<std::pair<MeasureId, MeasureId>, bool> significant;
};

/// Runs every ordered pair of distinct measures; a significant test adds a
/// win to the first and a loss to the second.
NetWinTable net_wins(const RunMatrix& matrix, const std::vector<MeasureId>& measures,
                     double alpha, Scope scope = Scope::kCustom,
                     const WilcoxonOptions& options = {});

/// net_wins over the measures of a predefined scope.
NetWinTable net_wins(const RunMatrix& matrix, Scope scope, double alpha,
                     const WilcoxonOptions& options = {});

/// Componentwise sum of wins, losses and nets; p-values and significance
/// flags are not carried over.
NetWinTable aggregate_across_models(const std::vector<NetWinTable>& tables);

}  // namespace euq
