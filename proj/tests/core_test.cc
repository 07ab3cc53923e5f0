#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "euq/core.h"
#include "euq/errors.h"
#include "euq/reference.h"
#include "test_support.h"

using namespace euq;
using euq::testing::random_set;
using euq::testing::uniform_int;

TEST_CASE("probability vectors validate and renormalize") {
  const auto p = ProbabilityVector::FromRaw({0.25, 0.75});
  CHECK(p[0] == 0.25);
  CHECK(p.size() == 2);

  // Within 1e-4 of one: renormalized by division.
  const auto q = ProbabilityVector::FromRaw({0.50005, 0.5});
  CHECK(q[0] == doctest::Approx(0.50005 / 1.00005).epsilon(1e-15));
  CHECK(q[0] + q[1] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(ProbabilityVector::FromRaw({0.5, 0.4}), InputError);
  CHECK_THROWS_AS(ProbabilityVector::FromRaw({1.2, -0.2}), InputError);
  CHECK_THROWS_AS(ProbabilityVector::FromRaw({1.0}), InputError);
  CHECK_THROWS_AS(ProbabilityVector::FromRaw({NAN, 1.0}), InputError);
}

TEST_CASE("exact-sum rows are stored bit for bit") {
  const std::vector<double> raw = {0.1, 0.2, 0.7};
  const auto p = ProbabilityVector::FromRaw(raw);
  for (std::size_t k = 0; k < raw.size(); ++k) CHECK(p[k] == raw[k]);
}

TEST_CASE("prediction sets reject mixed class counts and empty member lists") {
  CHECK_THROWS_AS(PredictionSet::FromRows({{0.5, 0.5}, {0.2, 0.3, 0.5}}), InputError);
  CHECK_THROWS_AS(PredictionSet(std::vector<ProbabilityVector>{}), InputError);
}

TEST_CASE("mean prediction") {
  SUBCASE("two binary members") {
    const auto m = mean_prediction(PredictionSet::FromRows({{0.9, 0.1}, {0.5, 0.5}}));
    CHECK(m.mean[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(m.mean[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m.argmax_class == 0);
  }
  SUBCASE("single member") {
    const auto m = mean_prediction(PredictionSet::FromRows({{1.0, 0.0, 0.0}}));
    CHECK(m.mean[0] == 1.0);
    CHECK(m.argmax_class == 0);
  }
  SUBCASE("ties go to the lowest index") {
    const auto m = mean_prediction(PredictionSet::FromRows({{0.2, 0.8}, {0.8, 0.2}}));
    CHECK(m.mean[0] == 0.5);
    CHECK(m.argmax_class == 0);
  }
  SUBCASE("matches the coordinatewise average on random sets") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
      const int k = uniform_int(rng, 2, 8);
      const int m = uniform_int(rng, 1, 12);
      const auto b = random_set(rng, k, m);
      const auto mp = mean_prediction(b);
      for (int c = 0; c < k; ++c) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += b.prob(j, c);
        CHECK(std::abs(mp.mean[c] - s / m) <= 1e-12);
        CHECK(mp.mean[c] <= mp.mean[mp.argmax_class]);
      }
    }
  }
}

TEST_CASE("interval construction") {
  SUBCASE("coordinatewise min and max") {
    const auto iv = build_intervals(PredictionSet::FromRows({{0.9, 0.1}, {0.5, 0.5}}));
    CHECK(iv.lower(0) == 0.5);
    CHECK(iv.lower(1) == 0.1);
    CHECK(iv.upper(0) == 0.9);
    CHECK(iv.upper(1) == 0.5);
  }
  SUBCASE("single member is degenerate") {
    const double t = 1.0 / 3.0;
    const auto iv = build_intervals(PredictionSet::FromRows({{t, t, 1.0 - 2 * t}}));
    for (int k = 0; k < 3; ++k) CHECK(iv.lower(k) == iv.upper(k));
  }
  SUBCASE("opposite vertices give the vacuous set") {
    const auto iv = build_intervals(PredictionSet::FromRows({{1, 0}, {0, 1}}));
    CHECK(iv.lower(0) == 0.0);
    CHECK(iv.lower(1) == 0.0);
    CHECK(iv.upper(0) == 1.0);
    CHECK(iv.upper(1) == 1.0);
  }
  SUBCASE("sandwich and mean containment") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 500; ++t) {
      const auto b = random_set(rng, uniform_int(rng, 2, 8), uniform_int(rng, 1, 10), 0.2);
      const auto iv = build_intervals(b);
      for (const auto& p : b.members()) CHECK(iv.contains(p.values(), 0.0));
      CHECK(iv.contains(mean_prediction(b).mean.values(), 1e-12));
    }
  }
  SUBCASE("invalid or empty credal sets are rejected") {
    CHECK_THROWS_AS(ProbabilityIntervals({0.6, 0.6}, {0.9, 0.9}), InputError);
    CHECK_THROWS_AS(ProbabilityIntervals({0.1, 0.1}, {0.2, 0.3}), InputError);
    CHECK_THROWS_AS(ProbabilityIntervals({0.5, 0.2}, {0.4, 0.9}), InputError);
    CHECK_THROWS_AS(ProbabilityIntervals({0.5}, {0.5}), InputError);
  }
}

TEST_CASE("lower and upper probabilities") {
  const ProbabilityIntervals iv({0.5, 0.1}, {0.9, 0.5});
  CHECK(lower_probability(iv, ClassSubset::Of({0}, 2)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(upper_probability(iv, ClassSubset::Of({0}, 2)) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(lower_probability(iv, ClassSubset::Full(2)) == 1.0);
  CHECK(upper_probability(iv, ClassSubset::Empty(2)) == 0.0);
  CHECK(lower_probability(iv, ClassSubset::Empty(2)) == 0.0);

  const auto vacuous = ProbabilityIntervals::Vacuous(2);
  CHECK(lower_probability(vacuous, ClassSubset::Of({0}, 2)) == 0.0);
  CHECK(upper_probability(vacuous, ClassSubset::Of({0}, 2)) == 1.0);

  SUBCASE("grid oracle agrees on the example") {
    const auto grid = reference::SimplexGrid{2, 0.001};
    auto mass0 = [](std::span<const double> p) { return p[0]; };
    auto neg_mass0 = [](std::span<const double> p) { return -p[0]; };
    CHECK(reference::grid_minimize(mass0, grid, iv).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(-reference::grid_minimize(neg_mass0, grid, iv).value ==
          doctest::Approx(0.9).epsilon(1e-12));
  }

  SUBCASE("monotone and conjugate over all subset pairs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
      const int k = uniform_int(rng, 2, 5);
      const auto iv2 = euq::testing::random_intervals(rng, k);
      const auto full = ClassSubset::Full(k);
      for (std::uint64_t a = 0; a <= full.mask; ++a) {
        const ClassSubset sa{a, k};
        const double la = lower_probability(iv2, sa);
        CHECK(upper_probability(iv2, sa) == 1.0 - lower_probability(iv2, sa.complement()));
        CHECK(la <= upper_probability(iv2, sa) + 1e-12);
        for (std::uint64_t b = 0; b <= full.mask; ++b) {
          const ClassSubset sb{b, k};
          if (sa.is_subset_of(sb)) CHECK(la <= lower_probability(iv2, sb) + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("class subsets") {
  const auto s = ClassSubset::Of({0, 2}, 4);
  CHECK(s.cardinality() == 2);
  CHECK(s.complement().cardinality() == 2);
  CHECK(s.complement().contains(1));
  CHECK(!s.complement().contains(0));
  CHECK(ClassSubset::Full(4).cardinality() == 4);
  CHECK(ClassSubset::Empty(4).complement().mask == ClassSubset::Full(4).mask);
}

TEST_CASE("credal vertices") {
  SUBCASE("binary segment endpoints") {
    const auto v = credal_vertices(ProbabilityIntervals({0.3, 0.3}, {0.7, 0.7}));
    REQUIRE(v.size() == 2);
    CHECK(v[0][0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(v[1][0] == doctest::Approx(0.7).epsilon(1e-15));
  }
  SUBCASE("degenerate intervals give one vertex") {
    const auto p = ProbabilityVector::FromRaw({0.2, 0.3, 0.5});
    CHECK(credal_vertices(ProbabilityIntervals::Degenerate(p)).size() == 1);
  }
  SUBCASE("vacuous set is the simplex") {
    const auto v = credal_vertices(ProbabilityIntervals::Vacuous(3));
    REQUIRE(v.size() == 3);
    for (const auto& p : v) CHECK(*std::max_element(p.values().begin(), p.values().end()) == 1.0);
  }
  SUBCASE("cap") {
    CHECK_THROWS_AS(credal_vertices(ProbabilityIntervals::Vacuous(17)), EnumerationLimitError);
    CHECK(credal_vertices(ProbabilityIntervals::Vacuous(5), 5).size() == 5);
  }
  SUBCASE("vertices are feasible") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 300; ++t) {
      const auto iv = euq::testing::random_intervals(rng, uniform_int(rng, 2, 8));
      for (const auto& p : credal_vertices(iv)) {
        CHECK(iv.contains(p.values(), 1e-9));
        double s = 0.0;
        for (double x : p.values()) s += x;
        CHECK(std::abs(s - 1.0) <= 1e-9);
      }
    }
  }
  SUBCASE("linear programs over lattice-aligned polytopes peak at a returned vertex") {
    // Bounds snapped to the lattice put every vertex on the lattice, so the
    // grid maximum must equal the best vertex up to rounding.
    std::mt19937_64 rng(15);
    const std::vector<std::pair<int, double>> cases = {{2, 0.001}, {3, 0.001}, {4, 0.02}};
    for (const auto& [k, step] : cases) {
      const reference::SimplexGrid grid{k, step};
      const int n = grid.units();
      const int instances = k == 3 ? 1 : 3;
      for (int t = 0; t < instances; ++t) {
        const auto raw = euq::testing::random_intervals(rng, k, 4);
        std::vector<double> lo(k);
        std::vector<double> hi(k);
        for (int c = 0; c < k; ++c) {
          lo[c] = std::floor(raw.lower(c) * n) * (1.0 / n);
          hi[c] = std::min(std::ceil(raw.upper(c) * n), double(n)) * (1.0 / n);
        }
        const ProbabilityIntervals iv(lo, hi);
        const auto vertices = credal_vertices(iv);
        for (int d = 0; d < 200; ++d) {
          std::vector<double> w(k);
          for (double& x : w) x = euq::testing::uniform(rng, -1.0, 1.0);
          auto linear = [&](std::span<const double> p) {
            double s = 0.0;
            for (int c = 0; c < k; ++c) s += w[c] * p[c];
            return s;
          };
          double best_vertex = -1e300;
          for (const auto& v : vertices) best_vertex = std::max(best_vertex, linear(v.values()));
          const auto opt = reference::grid_minimize(
              [&](std::span<const double> p) { return -linear(p); }, grid, iv);
          CHECK(std::abs(best_vertex + opt.value) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("entropy in bits") {
  const std::vector<double> uniform4 = {0.25, 0.25, 0.25, 0.25};
  CHECK(entropy_bits(uniform4) == 2.0);
  const std::vector<double> vertex = {0.0, 1.0, 0.0};
  CHECK(entropy_bits(vertex) == 0.0);
  const std::vector<double> p = {0.3, 0.7};
  CHECK(entropy_bits(p) == doctest::Approx(0.88129089923069261822).epsilon(1e-14));
}
