#include "euq/downstream.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "euq/errors.h"

namespace euq {

std::vector<double> default_betas() {
  std::vector<double> betas;
  for (int i = 0; i <= 50; ++i) betas.push_back(i / 100.0);
  return betas;
}

namespace {

double parse_double(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse rejection rate '" + token + "'");
  }
  if (used != token.size()) throw InputError("cannot parse rejection rate '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

void check_betas(const std::vector<double>& betas) {
  if (betas.empty()) throw InputError("the rejection-rate grid is empty");
  if (betas.front() != 0.0) throw InputError("the rejection-rate grid must start at 0");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0.0 && betas[i] < 1.0)) {
      throw InputError("rejection rates must lie in [0, 1)");
    }
    if (i > 0 && !(betas[i] > betas[i - 1])) {
      throw InputError("rejection rates must be strictly ascending");
    }
  }
}

}  // namespace

std::vector<double> parse_betas(const std::string& spec) {
  if (spec == "default") return default_betas();
  std::vector<double> betas;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw InputError("beta range must be start:stop:step");
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0) || stop < start) throw InputError("invalid beta range '" + spec + "'");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) betas.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto& token : split(spec, ',')) betas.push_back(parse_double(token));
  }
  check_betas(betas);
  return betas;
}

std::size_t retained_count(double beta, std::size_t n) {
  // The slack absorbs representation error in beta, e.g. (1 - 0.34) * 100.
  const double kept = std::floor((1.0 - beta) * static_cast<double>(n) + 1e-9);
  return static_cast<std::size_t>(std::max(kept, 0.0));
}

AccuracyRejectionCurve selective_prediction(const std::vector<EvaluationRecord>& records,
                                            MeasureId measure,
                                            const std::vector<double>& betas) {
  check_betas(betas);
  const std::size_t n = records.size();
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = records[i].scores.find(measure);
    if (it == records[i].scores.end()) {
      throw InputError("record '" + records[i].sample_id + "' has no " +
                       std::string(measure_name(measure)) + " score");
    }
    scores[i] = it->second;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // correct_prefix[j] = number of correct predictions among the j most certain.
  std::vector<std::size_t> correct_prefix(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& r = records[order[j]];
    correct_prefix[j + 1] = correct_prefix[j] + (r.predicted_label == r.true_label ? 1 : 0);
  }

  AccuracyRejectionCurve curve;
  for (double beta : betas) {
    const std::size_t kept = retained_count(beta, n);
    if (kept == 0) {
      std::ostringstream msg;
      msg << "rejection rate " << beta << " retains no samples; point omitted";
      curve.warnings.push_back(msg.str());
      continue;
    }
    curve.points.push_back({beta,
                            static_cast<double>(correct_prefix[kept]) /
                                static_cast<double>(kept),
                            kept});
  }
  if (curve.points.empty()) {
    throw InputError("no rejection rate retains any sample");
  }

  curve.beta_min = curve.points.front().rejection_rate;
  curve.beta_max = curve.points.back().rejection_rate;
  if (curve.points.size() == 1) {
    curve.auarc = curve.points.front().accuracy;
  } else {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      const auto& a = curve.points[i - 1];
      const auto& b = curve.points[i];
      area += (b.rejection_rate - a.rejection_rate) * (a.accuracy + b.accuracy) / 2.0;
    }
    curve.auarc = area / (curve.beta_max - curve.beta_min);
  }
  return curve;
}

DetectionResult ood_detection(const std::vector<double>& id_scores,
                              const std::vector<double>& ood_scores) {
  if (id_scores.empty() || ood_scores.empty()) {
    throw InputError("OOD detection needs at least one ID and one OOD score");
  }
  struct Entry {
    double score;
    bool ood;
  };
  std::vector<Entry> all;
  all.reserve(id_scores.size() + ood_scores.size());
  for (double s : id_scores) all.push_back({s, false});
  for (double s : ood_scores) all.push_back({s, true});
  for (const auto& e : all) {
    if (std::isnan(e.score)) throw InputError("NaN uncertainty score");
  }
  std::sort(all.begin(), all.end(),
            [](const Entry& a, const Entry& b) { return a.score < b.score; });

  // Ranks are 1-based; tied blocks share their midrank.
  double ood_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].score == all[i].score) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) {
      if (all[t].ood) ood_rank_sum += midrank;
    }
    i = j;
  }

  DetectionResult result;
  result.n_id = id_scores.size();
  result.n_ood = ood_scores.size();
  const double n_ood = static_cast<double>(result.n_ood);
  const double u = ood_rank_sum - n_ood * (n_ood + 1.0) / 2.0;
  result.auroc = u / (static_cast<double>(result.n_id) * n_ood);
  return result;
}

}  // namespace euq
