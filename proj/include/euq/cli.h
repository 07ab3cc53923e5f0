/// @file cli.h
/// Command-line entry points: synth -> quantify / eval -> rank -> report.
#pragma once

#include <iosfwd>
#include <vector>

#include "euq/downstream.h"
#include "euq/io.h"
#include "euq/measures.h"

namespace euq {

/// Scores every row of a prediction file under the requested measures.
/// Rows are processed by `workers` threads; output order matches the file.
std::vector<EvaluationRecord> evaluate_file(const PredictionFile& file,
                                            const std::vector<MeasureId>& measures,
                                            const MeasureOptions& options = {},
                                            int workers = 1);

/// Cross-checks one prediction set against the brute-force oracles for the
/// given measures. Returns the number of checks performed (0 when the input
/// is too large for the oracles); throws NumericalError on disagreement.
int oracle_check(const PredictionSet& set, const std::vector<MeasureId>& measures,
                 const MeasureOptions& options);

/// Runs the CLI. Returns the process exit code: 0 on success, 2 for input
/// errors, 3 for numerical failures, 4 when an enumeration cap is exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace euq
