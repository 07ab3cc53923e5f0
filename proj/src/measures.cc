#include "euq/measures.h"

#include <sstream>

#include "euq/credal_measures.h"
#include "euq/dist_measures.h"
#include "euq/errors.h"

namespace euq {

std::string_view measure_name(MeasureId id) {
  switch (id) {
    case MeasureId::kMI: return "mi";
    case MeasureId::kLWV: return "lwv";
    case MeasureId::kWD: return "wd";
    case MeasureId::kHDiff: return "hdiff";
    case MeasureId::kGH: return "gh";
    case MeasureId::kMMI: return "mmi";
  }
  return "?";
}

MeasureId parse_measure(std::string_view name) {
  for (MeasureId id : kAllMeasures) {
    if (measure_name(id) == name) return id;
  }
  throw InputError("unknown measure '" + std::string(name) +
                   "' (expected one of mi, lwv, wd, hdiff, gh, mmi)");
}

std::vector<MeasureId> parse_measure_list(std::string_view csv) {
  std::vector<MeasureId> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t end = std::min(csv.find(',', start), csv.size());
    std::string_view token = csv.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) throw InputError("empty entry in measure list");
    out.push_back(parse_measure(token));
    start = end + 1;
  }
  return out;
}

UncertaintyScore UncertaintyScore::Make(double raw, MeasureId measure) {
  if (!(raw >= 0.0)) {
    if (raw > -kNegativeNoise) return {0.0, measure};
    std::ostringstream msg;
    msg << measure_name(measure) << " evaluated to " << raw
        << ", below the numerical noise floor";
    throw NumericalError(msg.str());
  }
  return {raw, measure};
}

UncertaintyScore quantify(const PredictionSet& b, MeasureId measure,
                          const MeasureOptions& options) {
  switch (measure) {
    case MeasureId::kMI: return mutual_information(b);
    case MeasureId::kLWV: return label_wise_variance(b);
    case MeasureId::kWD: return wasserstein_eu(b, options.wd_prefactor);
    case MeasureId::kHDiff:
      return entropy_difference(build_intervals(b), options.vertex_cap);
    case MeasureId::kGH:
      return generalized_hartley(build_intervals(b), options.subset_cap);
    case MeasureId::kMMI:
      return max_mean_imprecision(build_intervals(b), options.subset_cap);
  }
  throw InputError("unhandled measure");
}

}  // namespace euq
