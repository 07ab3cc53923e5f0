#include "euq/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "euq/errors.h"

namespace euq {

namespace {

void check_entries(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw InputError("a probability vector needs at least 2 classes");
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kRenormalizeTolerance) {
      std::ostringstream msg;
      msg << "probability entry " << k << " = " << v << " is outside [0, 1]";
      throw InputError(msg.str());
    }
  }
}

}  // namespace

double order_independent_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

ProbabilityVector ProbabilityVector::FromRaw(std::vector<double> values) {
  check_entries(values);
  const double sum = order_independent_sum(values);
  const double deviation = std::abs(sum - 1.0);
  if (deviation > kRenormalizeTolerance) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum << ", off by more than "
        << kRenormalizeTolerance;
    throw InputError(msg.str());
  }
  if (deviation > kExactSumTolerance) {
    for (double& v : values) v /= sum;
  }
  for (double& v : values) v = std::min(v, 1.0);
  return ProbabilityVector(std::move(values));
}

ProbabilityVector ProbabilityVector::FromNormalized(std::vector<double> values) {
  check_entries(values);
  const double sum = order_independent_sum(values);
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum << ", expected 1";
    throw InputError(msg.str());
  }
  return ProbabilityVector(std::move(values));
}

std::size_t ProbabilityVector::argmax() const {
  // std::max_element returns the first maximum.
  return static_cast<std::size_t>(
      std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

PredictionSet::PredictionSet(std::vector<ProbabilityVector> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw InputError("a prediction set needs at least one member");
  }
  const std::size_t k = members_.front().size();
  for (const auto& p : members_) {
    if (p.size() != k) {
      throw InputError("prediction set members disagree on the class count");
    }
  }
}

PredictionSet PredictionSet::FromRows(
    const std::vector<std::vector<double>>& rows) {
  std::vector<ProbabilityVector> members;
  members.reserve(rows.size());
  for (const auto& row : rows) members.push_back(ProbabilityVector::FromRaw(row));
  return PredictionSet(std::move(members));
}

bool PredictionSet::members_agree() const {
  return std::all_of(members_.begin() + 1, members_.end(),
                     [&](const ProbabilityVector& p) { return p == members_.front(); });
}

ProbabilityIntervals::ProbabilityIntervals(std::vector<double> lower,
                                           std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw InputError("interval bounds have different lengths");
  }
  if (lower_.size() < 2) {
    throw InputError("probability intervals need at least 2 classes");
  }
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!(lower_[k] >= 0.0 && lower_[k] <= upper_[k] && upper_[k] <= 1.0)) {
      std::ostringstream msg;
      msg << "invalid interval for class " << k << ": [" << lower_[k] << ", "
          << upper_[k] << "]";
      throw InputError(msg.str());
    }
  }
  const double lo = order_independent_sum(lower_);
  const double hi = order_independent_sum(upper_);
  if (lo > 1.0 + kIntervalTolerance || hi < 1.0 - kIntervalTolerance) {
    std::ostringstream msg;
    msg << "intervals induce an empty credal set (sum lower = " << lo
        << ", sum upper = " << hi << ")";
    throw InputError(msg.str());
  }
}

ProbabilityIntervals ProbabilityIntervals::Vacuous(std::size_t num_classes) {
  return ProbabilityIntervals(std::vector<double>(num_classes, 0.0),
                              std::vector<double>(num_classes, 1.0));
}

ProbabilityIntervals ProbabilityIntervals::Degenerate(const ProbabilityVector& p) {
  std::vector<double> v(p.values().begin(), p.values().end());
  return ProbabilityIntervals(v, v);
}

bool ProbabilityIntervals::contains(std::span<const double> p, double tol) const {
  if (p.size() != lower_.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < lower_[k] - tol || p[k] > upper_[k] + tol) return false;
  }
  return true;
}

ClassSubset ClassSubset::Of(std::initializer_list<int> classes, int num_classes) {
  ClassSubset s{0, num_classes};
  for (int k : classes) s.mask |= std::uint64_t{1} << k;
  return s;
}

MeanPrediction mean_prediction(const PredictionSet& b) {
  const std::size_t m_count = b.num_members();
  const std::size_t k_count = b.num_classes();
  std::vector<double> mean(k_count);
  std::vector<double> column(m_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t m = 0; m < m_count; ++m) column[m] = b.prob(m, k);
    mean[k] = order_independent_sum(column) / static_cast<double>(m_count);
  }
  auto p = ProbabilityVector::FromNormalized(std::move(mean));
  const std::size_t arg = p.argmax();
  return {std::move(p), arg};
}

ProbabilityIntervals build_intervals(const PredictionSet& b) {
  const std::size_t k_count = b.num_classes();
  std::vector<double> lower(k_count, 1.0);
  std::vector<double> upper(k_count, 0.0);
  for (const auto& p : b.members()) {
    for (std::size_t k = 0; k < k_count; ++k) {
      lower[k] = std::min(lower[k], p[k]);
      upper[k] = std::max(upper[k], p[k]);
    }
  }
  return ProbabilityIntervals(std::move(lower), std::move(upper));
}

namespace {

void check_dimension(const ProbabilityIntervals& iv, const ClassSubset& a) {
  if (static_cast<std::size_t>(a.num_classes) != iv.num_classes()) {
    std::ostringstream msg;
    msg << "subset over " << a.num_classes << " classes used with intervals over "
        << iv.num_classes() << " classes";
    throw InputError(msg.str());
  }
}

}  // namespace

double lower_probability(const ProbabilityIntervals& iv, const ClassSubset& a) {
  check_dimension(iv, a);
  if (a.mask == 0) return 0.0;
  if (a.mask == ClassSubset::Full(a.num_classes).mask) return 1.0;
  double lower_in = 0.0;
  double upper_out = 0.0;
  for (std::size_t k = 0; k < iv.num_classes(); ++k) {
    if (a.contains(static_cast<int>(k))) {
      lower_in += iv.lower(k);
    } else {
      upper_out += iv.upper(k);
    }
  }
  return std::clamp(std::max(lower_in, 1.0 - upper_out), 0.0, 1.0);
}

double upper_probability(const ProbabilityIntervals& iv, const ClassSubset& a) {
  return 1.0 - lower_probability(iv, a.complement());
}

std::vector<ProbabilityVector> credal_vertices(const ProbabilityIntervals& iv,
                                               int class_cap) {
  const int k_count = static_cast<int>(iv.num_classes());
  if (k_count > class_cap) {
    std::ostringstream msg;
    msg << "vertex enumeration over " << k_count
        << " classes exceeds the cap of " << class_cap;
    throw EnumerationLimitError(msg.str());
  }
  // Snap tolerance: a free coordinate this close to a bound is set to the
  // bound, so vertices reached from different free classes coincide bitwise.
  constexpr double kSnap = 1e-10;

  std::vector<std::vector<double>> found;
  std::vector<double> candidate(k_count);
  const std::uint64_t patterns = std::uint64_t{1} << (k_count - 1);
  for (int free = 0; free < k_count; ++free) {
    for (std::uint64_t bits = 0; bits < patterns; ++bits) {
      double rest = 0.0;
      int bit = 0;
      for (int k = 0; k < k_count; ++k) {
        if (k == free) continue;
        candidate[k] = ((bits >> bit) & 1u) ? iv.upper(k) : iv.lower(k);
        rest += candidate[k];
        ++bit;
      }
      double value = 1.0 - rest;
      const double lo = iv.lower(free);
      const double hi = iv.upper(free);
      if (value < lo - kSnap || value > hi + kSnap) continue;
      if (std::abs(value - lo) <= kSnap) value = lo;
      if (std::abs(value - hi) <= kSnap) value = hi;
      candidate[free] = value;
      found.push_back(candidate);
    }
  }

  std::sort(found.begin(), found.end());
  std::vector<ProbabilityVector> vertices;
  const std::vector<double>* previous = nullptr;
  for (const auto& v : found) {
    if (previous != nullptr) {
      double diff = 0.0;
      for (int k = 0; k < k_count; ++k) {
        diff = std::max(diff, std::abs(v[k] - (*previous)[k]));
      }
      if (diff <= kIntervalTolerance) continue;
    }
    vertices.push_back(ProbabilityVector::FromNormalized(v));
    previous = &v;
  }
  return vertices;
}

double entropy_bits(std::span<const double> p) {
  // log2 K minus the divergence from uniform; exact for uniform vectors and
  // for vertices of the simplex.
  const double k = static_cast<double>(p.size());
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double v : p) {
    if (v > 0.0) terms.push_back(v * std::log2(k * v));
  }
  const double h = std::log2(k) - order_independent_sum(std::move(terms));
  return std::clamp(h, 0.0, std::log2(k));
}

}  // namespace euq
