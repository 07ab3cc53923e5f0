/// @file measures.h
/// Measure identifiers, the score type, and a dispatcher over all six
/// epistemic-uncertainty measures.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "euq/core.h"

namespace euq {

enum class MeasureId { kMI, kLWV, kWD, kHDiff, kGH, kMMI };

inline constexpr std::array<MeasureId, 6> kAllMeasures = {
    MeasureId::kMI,    MeasureId::kLWV, MeasureId::kWD,
    MeasureId::kHDiff, MeasureId::kGH,  MeasureId::kMMI};

inline constexpr std::array<MeasureId, 3> kDistributionMeasures = {
    MeasureId::kMI, MeasureId::kLWV, MeasureId::kWD};

inline constexpr std::array<MeasureId, 3> kCredalMeasures = {
    MeasureId::kHDiff, MeasureId::kGH, MeasureId::kMMI};

/// Lowercase CLI name: mi, lwv, wd, hdiff, gh, mmi.
std::string_view measure_name(MeasureId id);
/// Inverse of measure_name; throws InputError for unknown names.
MeasureId parse_measure(std::string_view name);
/// Parses a comma-separated list of measure names.
std::vector<MeasureId> parse_measure_list(std::string_view csv);

/// Noise band below zero that is clamped to exactly zero.
inline constexpr double kNegativeNoise = 1e-12;

struct UncertaintyScore {
  double value = 0.0;
  MeasureId measure = MeasureId::kMI;

  /// Clamps values in (-1e-12, 0) to 0; throws NumericalError below that.
  static UncertaintyScore Make(double raw, MeasureId measure);
};

/// Scaling convention for the Wasserstein measure. kHalfL1 keeps the 1/2
/// prefactor on the summed L1 distances; kFullL1 drops it.
enum class WdPrefactor { kHalfL1, kFullL1 };

struct MeasureOptions {
  WdPrefactor wd_prefactor = WdPrefactor::kHalfL1;
  int vertex_cap = kDefaultVertexCap;
  int subset_cap = kDefaultSubsetCap;
};

/// Evaluates one measure on a prediction set; the credal measures go through
/// build_intervals first.
UncertaintyScore quantify(const PredictionSet& b, MeasureId measure,
                          const MeasureOptions& options = {});

}  // namespace euq
