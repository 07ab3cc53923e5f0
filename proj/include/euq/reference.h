/// @file reference.h
/// Brute-force oracles. Slow and deliberately simple; used by the tests and
/// by `quantify --oracle` to cross-check the fast paths on small inputs.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "euq/core.h"

namespace euq::reference {

/// Lattice of points on the simplex whose coordinates are multiples of step.
struct SimplexGrid {
  int num_classes = 2;
  double step = 0.001;

  /// 0.001 for K = 2, 0.005 for K = 3, 0.02 for K = 4 (and beyond).
  static SimplexGrid Default(int num_classes);

  /// Number of steps making up the unit mass.
  int units() const;
};

using Objective = std::function<double(std::span<const double>)>;

struct GridOptimum {
  std::vector<double> argmin;
  double value = 0.0;
  std::size_t evaluated = 0;
  /// Largest |f(neighbor) - f(argmin)| over the lattice neighbors that move
  /// one step of mass between two classes, feasible or not. A credal set
  /// thinner than a cell can hide its optimum from the lattice; this is the
  /// resolution bound that covers that case.
  double neighbor_variation = 0.0;

  /// Objective variation across one lattice cell: the cell spans K - 1
  /// independent step directions.
  double resolution_bound() const {
    return static_cast<double>(argmin.size() - 1) * neighbor_variation;
  }
};

/// Exhaustive minimization over the (feasible) lattice in lexicographic
/// order; ties keep the first lattice point. Throws OracleError when no
/// lattice point is feasible.
GridOptimum grid_minimize(const Objective& objective, const SimplexGrid& grid,
                          const std::optional<ProbabilityIntervals>& iv = std::nullopt);

/// (#{o > i} + #{o == i} / 2) / (n_id * n_ood).
double auroc_pair_count(const std::vector<double>& id_scores,
                        const std::vector<double>& ood_scores);

/// One-sided p-value P(W+ >= observed) by enumerating all sign patterns of
/// the zero-dropped, midranked differences. Throws OracleError beyond 16
/// nonzero differences.
double wilcoxon_exact_enum(const std::vector<double>& x, const std::vector<double>& y);

/// Moebius masses by the literal double loop: for each Q, walk every A
/// contained in Q and add (-1)^|Q \ A| lower_probability(A). Cap K <= 12.
std::vector<double> moebius_mass_direct(const ProbabilityIntervals& iv);

/// Generalized Hartley from moebius_mass_direct.
double generalized_hartley_direct(const ProbabilityIntervals& iv);

}  // namespace euq::reference
