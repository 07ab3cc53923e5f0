#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "euq/errors.h"
#include "euq/reference.h"

using namespace euq;
using namespace euq::reference;

namespace {

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

}  // namespace

TEST_CASE("grid enumerates every composition once") {
  std::size_t count = 0;
  const auto r = grid_minimize(
      [&](std::span<const double>) {
        ++count;
        return 0.0;
      },
      SimplexGrid{3, 0.01});
  // C(100 + 2, 2) lattice points, plus the neighbor probes around the argmin.
  CHECK(r.evaluated == 5151);
  CHECK(count >= 5151);
  // Ties keep the first lattice point in lexicographic order.
  CHECK(r.argmin == std::vector<double>{0.0, 0.0, 1.0});
}

TEST_CASE("grid examples") {
  SUBCASE("vertex optimum") {
    const auto r = grid_minimize(
        [](std::span<const double> p) { return std::abs(p[0] - 1.0) + std::abs(p[1]); },
        SimplexGrid{2, 0.001});
    CHECK(r.value == 0.0);
    CHECK(r.argmin == std::vector<double>{1.0, 0.0});
  }
  SUBCASE("entropy peaks near uniform") {
    const auto r = grid_minimize([](std::span<const double> p) { return -entropy(p); },
                                 SimplexGrid{3, 0.005}, ProbabilityIntervals::Vacuous(3));
    CHECK(-r.value == doctest::Approx(std::log2(3.0)).epsilon(1e-4));
    for (double v : r.argmin) CHECK(std::abs(v - 1.0 / 3.0) < 0.005);
  }
  SUBCASE("flat optimum between two members") {
    auto objective = [](std::span<const double> p) {
      return std::abs(0.2 - p[0]) + std::abs(0.8 - p[1]) + std::abs(0.9 - p[0]) +
             std::abs(0.1 - p[1]);
    };
    const auto r = grid_minimize(objective, SimplexGrid{2, 0.001});
    CHECK(r.value == doctest::Approx(1.4).epsilon(1e-12));
    // Half the summed distance, matching the half-L1 measure.
    CHECK(r.value / 2.0 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(r.argmin[0] >= 0.2 - 1e-12);
    CHECK(r.argmin[0] <= 0.9 + 1e-12);
    const double mid[2] = {0.55, 0.45};
    CHECK(objective(mid) == doctest::Approx(1.4).epsilon(1e-12));
  }
  SUBCASE("no lattice point inside a thin credal set") {
    const ProbabilityIntervals thin({0.3012, 0.6}, {0.3018, 0.7});
    CHECK_THROWS_AS(grid_minimize([](std::span<const double>) { return 0.0; },
                                  SimplexGrid{2, 0.001}, thin),
                    OracleError);
  }
  SUBCASE("determinism") {
    auto f = [](std::span<const double> p) { return std::sin(17.0 * p[0]) + p[1] * p[2]; };
    const auto a = grid_minimize(f, SimplexGrid{3, 0.005});
    const auto b = grid_minimize(f, SimplexGrid{3, 0.005});
    CHECK(a.argmin == b.argmin);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("pair counting and sign enumeration") {
  CHECK(auroc_pair_count({0.1, 0.2}, {0.3, 0.4}) == 1.0);
  CHECK(auroc_pair_count({0.5, 0.5}, {0.5}) == 0.5);
  CHECK(auroc_pair_count({0.1, 0.4}, {0.3, 0.9}) == 0.75);
  CHECK(wilcoxon_exact_enum({1, 2}, {1, 2}) == 1.0);
  CHECK(wilcoxon_exact_enum({1, 2, 3}, {0, 0, 0}) == 0.125);
  std::vector<double> x(10);
  for (int i = 0; i < 10; ++i) x[i] = i + 1;
  CHECK(wilcoxon_exact_enum(x, std::vector<double>(10, 0.0)) == std::ldexp(1.0, -10));
  CHECK_THROWS_AS(wilcoxon_exact_enum(std::vector<double>(17, 1.0), std::vector<double>(17, 0.0)),
                  OracleError);
}

TEST_CASE("direct Moebius inversion") {
  const auto masses = moebius_mass_direct(ProbabilityIntervals({0.5, 0.1}, {0.9, 0.5}));
  CHECK(masses[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(masses[2] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(masses[3] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(generalized_hartley_direct(ProbabilityIntervals::Vacuous(4)) == 2.0);
  CHECK_THROWS_AS(moebius_mass_direct(ProbabilityIntervals::Vacuous(13)), OracleError);
}
