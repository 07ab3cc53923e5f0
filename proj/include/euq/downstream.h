/// @file downstream.h
/// Benchmarks that consume per-sample uncertainty scores: selective
/// prediction (accuracy-rejection curves) and OOD detection (AUROC).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "euq/measures.h"

namespace euq {

struct EvaluationRecord {
  std::string sample_id;
  std::size_t true_label = 0;
  std::size_t predicted_label = 0;
  std::map<MeasureId, double> scores;
};

struct ArcPoint {
  double rejection_rate = 0.0;
  double accuracy = 0.0;
  std::size_t retained = 0;
};

struct AccuracyRejectionCurve {
  std::vector<ArcPoint> points;
  /// Trapezoidal area over [first beta, last beta] divided by that range;
  /// equal to the single accuracy when only one point survives.
  double auarc = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  /// One message per rejection rate dropped because nothing was retained.
  std::vector<std::string> warnings;
};

struct DetectionResult {
  double auroc = 0.0;
  std::size_t n_id = 0;
  std::size_t n_ood = 0;
};

/// {0.00, 0.01, ..., 0.50}.
std::vector<double> default_betas();

/// Parses "default", a comma list "0,0.1,0.2", or a range "start:stop:step"
/// (stop inclusive).
std::vector<double> parse_betas(const std::string& spec);

/// Number of records kept at rejection rate beta: floor((1 - beta) * n).
std::size_t retained_count(double beta, std::size_t n);

/// Sorts by (score, input position) and keeps the most certain prefix for each
/// rejection rate. `betas` must be strictly ascending, start at 0 and stay
/// below 1.
AccuracyRejectionCurve selective_prediction(const std::vector<EvaluationRecord>& records,
                                            MeasureId measure,
                                            const std::vector<double>& betas);

/// AUROC with OOD as the positive class, from midranks (Mann-Whitney).
DetectionResult ood_detection(const std::vector<double>& id_scores,
                              const std::vector<double>& ood_scores);

}  // namespace euq
