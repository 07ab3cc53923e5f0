#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "euq/errors.h"
#include "euq/io.h"

namespace euq {

namespace {

void check_spec(const SynthSpec& spec) {
  std::ostringstream msg;
  if (spec.num_classes < 2) msg << "K must be at least 2";
  else if (spec.num_members < 1) msg << "M must be at least 1";
  else if (spec.num_samples < 1) msg << "N must be at least 1";
  else if (!(spec.error_rate >= 0.0 && spec.error_rate <= 1.0)) msg << "error rate must lie in [0, 1]";
  else if (!(spec.separation >= 0.0)) msg << "separation must be nonnegative";
  if (!msg.str().empty()) throw InputError("invalid synth spec: " + msg.str());
}

// Shares of the leading class among the two mixed classes, one per member.
std::vector<double> correct_shape(std::mt19937_64& rng, int m_count) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> x(m_count);
  const double shape = unit(rng);
  if (shape < 0.4) {
    // Tight cluster.
    const double center = 0.65 + 0.25 * unit(rng);
    for (double& v : x) v = center + 0.02 * noise(rng);
  } else if (shape < 0.7) {
    // Jitter close to the simplex vertex.
    for (double& v : x) v = 1.0 - 0.12 * unit(rng);
  } else {
    // Confident cluster with one displaced member.
    const double center = 0.9 + 0.07 * unit(rng);
    for (double& v : x) v = center + 0.01 * noise(rng);
    const auto outlier = std::uniform_int_distribution<int>(0, m_count - 1)(rng);
    x[outlier] = center - (0.35 + 0.1 * unit(rng));
  }
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

std::vector<double> hard_shape(std::mt19937_64& rng, int m_count, double strength) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double half_width = 0.2 + 0.3 * strength;
  std::vector<double> x(m_count);
  for (double& v : x) v = std::clamp(0.5 + half_width * (2.0 * unit(rng) - 1.0), 0.0, 1.0);
  return x;
}

}  // namespace

PredictionFile synth_generate(const SynthSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k_count = spec.num_classes;
  const double strength = 1.0 - std::exp(-spec.separation);

  PredictionFile file;
  file.path = "synthetic";
  file.num_classes = static_cast<std::size_t>(k_count);
  for (int n = 0; n < spec.num_samples; ++n) {
    const bool error = unit(rng) < spec.error_rate;
    const bool hard = error && unit(rng) < strength;
    const int lead = std::uniform_int_distribution<int>(0, k_count - 1)(rng);
    int runner_up = std::uniform_int_distribution<int>(0, k_count - 2)(rng);
    if (runner_up >= lead) ++runner_up;

    // Fixed residual mass on the classes outside the mixed pair.
    std::vector<double> residual(k_count, 0.0);
    double residual_mass = 0.0;
    if (k_count > 2) {
      residual_mass = 0.1 * unit(rng);
      double total = 0.0;
      for (int k = 0; k < k_count; ++k) {
        if (k == lead || k == runner_up) continue;
        residual[k] = 0.05 + unit(rng);
        total += residual[k];
      }
      for (double& r : residual) r *= residual_mass / total;
    }

    const std::vector<double> shares = hard ? hard_shape(rng, spec.num_members, strength)
                                            : correct_shape(rng, spec.num_members);
    std::vector<ProbabilityVector> members;
    for (double share : shares) {
      std::vector<double> p = residual;
      double mass = residual_mass;
      if (hard && k_count > 2) {
        // Hard samples also disagree on the residual classes.
        const double scale = 1.0 + strength * (4.0 * unit(rng) - 1.0);
        for (double& r : p) r *= scale;
        mass *= scale;
      }
      p[lead] = (1.0 - mass) * share;
      p[runner_up] = (1.0 - mass) * (1.0 - share);
      members.push_back(ProbabilityVector::FromRaw(std::move(p)));
    }
    PredictionSet set(std::move(members));

    const std::size_t predicted = mean_prediction(set).argmax_class;
    std::size_t label = predicted;
    if (error) {
      label = static_cast<std::size_t>(
          std::uniform_int_distribution<int>(0, k_count - 2)(rng));
      if (label >= predicted) ++label;
    }
    file.rows.push_back({"s" + std::to_string(n), label, std::move(set)});
  }
  return file;
}

}  // namespace euq
