/// @file credal_measures.h
/// Epistemic uncertainty of a credal set given by probability intervals:
/// entropy difference, Generalized Hartley and maximum mean imprecision.
#pragma once

#include <cstdint>
#include <vector>

#include "euq/core.h"
#include "euq/measures.h"

namespace euq {

/// Signed mass function over all 2^K subsets, indexed by subset bitmask.
struct MoebiusMass {
  std::vector<double> masses;
  int num_classes = 0;

  double mass(const ClassSubset& q) const { return masses[q.mask]; }
};

/// Largest entropy (bits) over the credal set.
///
/// Water-filling: the maximizer is p_k = clamp(t, lower_k, upper_k) for the
/// level t at which these coordinates sum to one. The sum is piecewise linear
/// and nondecreasing in t with breakpoints at the interval ends, so t is found
/// exactly by scanning the sorted breakpoints.
double max_entropy(const ProbabilityIntervals& iv);

/// The maximizer used by max_entropy.
std::vector<double> max_entropy_distribution(const ProbabilityIntervals& iv);

/// Smallest entropy over the credal set; entropy is concave, so this is the
/// minimum over credal_vertices.
double min_entropy(const ProbabilityIntervals& iv, int vertex_cap = kDefaultVertexCap);

UncertaintyScore entropy_difference(const ProbabilityIntervals& iv,
                                    int vertex_cap = kDefaultVertexCap);

/// Binary closed form for the entropy difference on class-0 bounds [lo, hi]:
/// max(H(hi), H(lo), H(0.5) if 0.5 in [lo, hi]) - min(H(hi), H(lo)).
double entropy_difference_binary(double lo, double hi);

/// Lower probabilities of every subset, indexed by bitmask.
std::vector<double> lower_probability_table(const ProbabilityIntervals& iv,
                                            int subset_cap = kDefaultSubsetCap);

/// Moebius inverse of the lower-probability capacity.
MoebiusMass moebius_mass(const ProbabilityIntervals& iv,
                         int subset_cap = kDefaultSubsetCap);

/// sum over |Q| >= 2 of mass(Q) * log2 |Q|.
UncertaintyScore generalized_hartley(const ProbabilityIntervals& iv,
                                     int subset_cap = kDefaultSubsetCap);

/// sup over subsets A of upper(A) - lower(A).
UncertaintyScore max_mean_imprecision(const ProbabilityIntervals& iv,
                                      int subset_cap = kDefaultSubsetCap);

}  // namespace euq
