/// @file core.h
/// Probability vectors on the simplex, finite prediction sets, and the
/// credal sets induced by class-wise probability intervals.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace euq {

/// Raw rows whose sum is off by at most this much are renormalized; anything
/// further from one is rejected.
inline constexpr double kRenormalizeTolerance = 1e-4;

/// Rows closer to one than this are kept bit-for-bit.
inline constexpr double kExactSumTolerance = 1e-12;

/// Slack for interval-consistency checks.
inline constexpr double kIntervalTolerance = 1e-9;

/// Default cap on the class count for credal vertex enumeration.
inline constexpr int kDefaultVertexCap = 16;

/// Default cap on the class count for subset (power set) enumeration.
inline constexpr int kDefaultSubsetCap = 20;

/// A point on the (K-1)-simplex.
class ProbabilityVector {
 public:
  /// Validates raw probabilities and renormalizes small sum deviations.
  /// Throws InputError for K < 2, entries outside [0, 1] or a sum further
  /// than kRenormalizeTolerance from one.
  static ProbabilityVector FromRaw(std::vector<double> values);

  /// Builds a vector without renormalization; entries must already satisfy
  /// the invariants up to 1e-6.
  static ProbabilityVector FromNormalized(std::vector<double> values);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> values() const { return probs_; }

  /// Index of the largest entry, lowest index on ties.
  std::size_t argmax() const;

  bool operator==(const ProbabilityVector&) const = default;

 private:
  explicit ProbabilityVector(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// The distribution-based representation: M first-order predictions over
/// the same K classes.
class PredictionSet {
 public:
  explicit PredictionSet(std::vector<ProbabilityVector> members);

  /// Convenience for tests and literals; each row goes through FromRaw.
  static PredictionSet FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t num_members() const { return members_.size(); }
  std::size_t num_classes() const { return members_.front().size(); }
  const ProbabilityVector& member(std::size_t m) const { return members_[m]; }
  const std::vector<ProbabilityVector>& members() const { return members_; }
  double prob(std::size_t m, std::size_t k) const { return members_[m][k]; }

  /// True when every member is bitwise identical to the first.
  bool members_agree() const;

 private:
  std::vector<ProbabilityVector> members_;
};

struct MeanPrediction {
  ProbabilityVector mean;
  std::size_t argmax_class;
};

/// Class-wise bounds [lower_k, upper_k]. Any construction path checks
/// 0 <= lower <= upper <= 1 and sum(lower) <= 1 <= sum(upper).
class ProbabilityIntervals {
 public:
  ProbabilityIntervals(std::vector<double> lower, std::vector<double> upper);

  /// All intervals [0, 1].
  static ProbabilityIntervals Vacuous(std::size_t num_classes);
  /// lower = upper = p.
  static ProbabilityIntervals Degenerate(const ProbabilityVector& p);

  std::size_t num_classes() const { return lower_.size(); }
  double lower(std::size_t k) const { return lower_[k]; }
  double upper(std::size_t k) const { return upper_[k]; }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }

  /// True when p lies inside every interval (with slack tol).
  bool contains(std::span<const double> p, double tol = kIntervalTolerance) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// A subset of the K classes encoded as a bitmask; bit k set means class k
/// belongs to the subset.
struct ClassSubset {
  std::uint64_t mask = 0;
  int num_classes = 0;

  static ClassSubset Empty(int num_classes) { return {0, num_classes}; }
  static ClassSubset Full(int num_classes) {
    return {(std::uint64_t{1} << num_classes) - 1, num_classes};
  }
  static ClassSubset Of(std::initializer_list<int> classes, int num_classes);

  int cardinality() const { return std::popcount(mask); }
  bool contains(int k) const { return (mask >> k) & 1u; }
  ClassSubset complement() const {
    return {Full(num_classes).mask & ~mask, num_classes};
  }
  bool is_subset_of(const ClassSubset& other) const {
    return (mask & ~other.mask) == 0;
  }
};

/// Arithmetic mean of the members and its argmax (lowest index on ties).
MeanPrediction mean_prediction(const PredictionSet& b);

/// Coordinatewise min/max over the members.
ProbabilityIntervals build_intervals(const PredictionSet& b);

/// max(sum_{k in A} lower_k, 1 - sum_{k not in A} upper_k), clipped to [0, 1].
double lower_probability(const ProbabilityIntervals& iv, const ClassSubset& a);

/// 1 - lower_probability(complement of A).
double upper_probability(const ProbabilityIntervals& iv, const ClassSubset& a);

/// Extreme points of the credal polytope. Throws EnumerationLimitError when
/// K exceeds `class_cap`.
std::vector<ProbabilityVector> credal_vertices(const ProbabilityIntervals& iv,
                                               int class_cap = kDefaultVertexCap);

/// Shannon entropy in bits, with 0 log 0 = 0.
double entropy_bits(std::span<const double> p);

/// Sum of the values after sorting them, so the result does not depend on
/// the order they were supplied in.
double order_independent_sum(std::vector<double> values);

}  // namespace euq
