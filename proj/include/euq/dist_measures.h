/// @file dist_measures.h
/// Epistemic uncertainty of a finite prediction set: mutual information,
/// label-wise variance and the L1 Wasserstein measure.
#pragma once

#include <vector>

#include "euq/core.h"
#include "euq/measures.h"

namespace euq {

/// H(mean) - mean of member entropies, in bits.
UncertaintyScore mutual_information(const PredictionSet& b);

/// Sum over classes of the population variance of the member probabilities.
UncertaintyScore label_wise_variance(const PredictionSet& b);

/// Minimizer and value of sum_m ||p_m - c||_1 over points c of the simplex.
struct L1Center {
  std::vector<double> center;
  double total_distance = 0.0;
};

/// Exact solution of the simplex-constrained L1 center problem.
///
/// Each class contributes a convex piecewise-linear cost in its own
/// coordinate whose slopes are -M, -M+2, ..., M between the sorted member
/// values. Dualizing the unit-sum constraint, the optimal multiplier is one
/// of these slopes: starting from the origin, segments are filled in order of
/// increasing slope until the unit of mass is spent. Segments tied on slope
/// and only partly filled share the remainder in proportion to their length,
/// which keeps the center equivariant under class relabeling.
L1Center l1_center(const PredictionSet& b);

/// Wasserstein-based epistemic uncertainty: prefactor * min_c sum_m
/// ||p_m - c||_1 with prefactor 1/2 (kHalfL1) or 1 (kFullL1).
UncertaintyScore wasserstein_eu(const PredictionSet& b,
                                WdPrefactor prefactor = WdPrefactor::kHalfL1);

/// Binary closed form sum_m |p_m0 - median| on class-0 coordinates, using
/// the lower median for even M. Throws InputError unless K == 2.
double wasserstein_binary_closed_form(const PredictionSet& b);

}  // namespace euq
