#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "support/oracles.hpp"
#include "tdaee/error.hpp"
#include "tdaee/wasserstein.hpp"

using namespace tdaee;

namespace {

PersistenceDiagram bars(std::vector<std::pair<double, double>> v, int dim = 1) {
  PersistenceDiagram d;
  d.dimension = dim;
  for (auto [b, e] : v) d.points.push_back({b, e, false});
  return d;
}

// Cost of a returned matching recomputed from the index convention.
double matching_cost(const PersistenceDiagram& a, const PersistenceDiagram& b,
                     const WassersteinResult& r) {
  const std::size_t na = a.size(), nb = b.size();
  double total = 0.0;
  for (auto [i, j] : r.matching) {
    double c = 0.0;
    if (i < na && j < nb) {
      c = std::max(std::abs(a.points[i].birth - b.points[j].birth),
                   std::abs(a.points[i].death - b.points[j].death));
    } else if (i < na) {
      c = (a.points[i].death - a.points[i].birth) / 2;
    } else if (j < nb) {
      c = (b.points[j].death - b.points[j].birth) / 2;
    }
    total += std::pow(c, r.p);
  }
  return total;
}

double brute_bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = perm[i];
      double c = 0;
      if (i < na && j < nb) c = sup_distance(a.points[i], b.points[j]);
      else if (i < na) c = diagonal_distance(a.points[i]);
      else if (j < nb) c = diagonal_distance(b.points[j]);
      worst = std::max(worst, c);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0.0 : best;
}

}  // namespace

TEST(Wasserstein, IdenticalDiagramsAreAtZero) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto d = oracle::random_diagram(rng, 8);
    EXPECT_EQ(wasserstein_distance(d, d).distance, 0.0);
  }
}

TEST(Wasserstein, SingleBarAgainstEmpty) {
  const auto r = wasserstein_distance(bars({{0, 2}}), bars({}), 2.0);
  EXPECT_EQ(r.distance, 1.0);
  ASSERT_EQ(r.matching.size(), 1u);
}

TEST(Wasserstein, MoveBeatsTwoDiagonalTrips) {
  const double s = 4 * std::sqrt(2.0);
  const auto r = wasserstein_distance(bars({{0, 4}}), bars({{0, s}}), 1.0);
  EXPECT_NEAR(r.distance, s - 4, 1e-15);
  EXPECT_LT(r.distance, 2 + s / 2);
}

TEST(Wasserstein, MatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (double p : {1.0, 2.0, 3.0}) {
    for (int t = 0; t < 40; ++t) {
      const auto a = oracle::random_diagram(rng, 4);
      const auto b = oracle::random_diagram(rng, 4);
      const auto r = wasserstein_distance(a, b, p);
      EXPECT_EQ(r.total_cost, oracle::brute_force_wasserstein_cost(a, b, p));
      EXPECT_NEAR(matching_cost(a, b, r), r.total_cost, 1e-12);
      EXPECT_NEAR(r.distance, std::pow(r.total_cost, 1 / p), 1e-15);
    }
  }
}

TEST(Wasserstein, MatchingIsPerfect) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_diagram(rng, 6);
    const auto b = oracle::random_diagram(rng, 6);
    const auto r = wasserstein_distance(a, b);
    const std::size_t n = a.size() + b.size();
    ASSERT_EQ(r.matching.size(), n);
    std::vector<int> left(n), right(n);
    for (auto [i, j] : r.matching) {
      ASSERT_LT(i, n);
      ASSERT_LT(j, n);
      ++left[i];
      ++right[j];
    }
    EXPECT_TRUE(std::all_of(left.begin(), left.end(), [](int c) { return c == 1; }));
    EXPECT_TRUE(std::all_of(right.begin(), right.end(), [](int c) { return c == 1; }));
  }
}

TEST(Wasserstein, MetricAxioms) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const auto a = oracle::random_diagram(rng, 6);
    const auto b = oracle::random_diagram(rng, 6);
    const auto c = oracle::random_diagram(rng, 6);
    const double ab = wasserstein_distance(a, b).distance;
    EXPECT_EQ(ab, wasserstein_distance(b, a).distance);
    EXPECT_LE(wasserstein_distance(a, c).distance,
              ab + wasserstein_distance(b, c).distance + 1e-9);
  }
}

TEST(Wasserstein, SharedPointNeverIncreasesDistance) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    auto a = oracle::random_diagram(rng, 5);
    auto b = oracle::random_diagram(rng, 5);
    const double before = wasserstein_distance(a, b).distance;
    const auto extra = oracle::random_diagram(rng, 1);
    if (extra.empty()) continue;
    a.points.push_back(extra.points[0]);
    b.points.push_back(extra.points[0]);
    EXPECT_LE(wasserstein_distance(a, b).distance, before + 1e-12);
  }
}

TEST(Wasserstein, Errors) {
  EXPECT_THROW(wasserstein_distance(bars({{0, 1}}, 0), bars({{0, 1}}, 1)), Error);
  try {
    wasserstein_distance(bars({}, 0), bars({}, 1));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(wasserstein_distance(bars({{0, INFINITY}}), bars({})), Error);
  EXPECT_THROW(wasserstein_distance(bars({}), bars({}), 0.5), Error);
}

TEST(Bottleneck, MatchesEnumerationAndBoundsWasserstein) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto a = oracle::random_diagram(rng, 4);
    const auto b = oracle::random_diagram(rng, 4);
    const double w = bottleneck_distance(a, b);
    EXPECT_EQ(w, brute_bottleneck(a, b));
    EXPECT_LE(w, wasserstein_distance(a, b, 2.0).distance + 1e-12);
  }
}

TEST(Bottleneck, Essentials) {
  PersistenceDiagram a{0, {{0, INFINITY, true}, {0, 1, false}}};
  PersistenceDiagram b{0, {{0.25, INFINITY, true}, {0, 1, false}}};
  EXPECT_EQ(bottleneck_distance(a, b), 0.25);
  PersistenceDiagram c{0, {{0, 1, false}}};
  EXPECT_EQ(bottleneck_distance(a, c), INFINITY);
}

TEST(ConsecutiveDistances, IdenticalDiagrams) {
  const std::vector<PersistenceDiagram> ds(4, bars({{0, 1}, {0.5, 2}}));
  const std::vector<Date> ends{Date(2020, 1, 1), Date(2020, 1, 2), Date(2020, 1, 3), Date(2020, 1, 6)};
  const auto s = consecutive_distances(ds, ends);
  EXPECT_EQ(s.kind, SignalKind::WD);
  EXPECT_EQ(s.values, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(s.times, (std::vector<Date>(ends.begin() + 1, ends.end())));
}

TEST(ConsecutiveDistances, LengthAndAlternatingValue) {
  const std::vector<PersistenceDiagram> ds{bars({{0, 1}}), bars({}), bars({{0, 1}}), bars({})};
  const std::vector<Date> ends{Date(2020, 1, 1), Date(2020, 1, 2), Date(2020, 1, 3), Date(2020, 1, 4)};
  const auto s = consecutive_distances(ds, ends, 2.0);
  EXPECT_EQ(s.values, (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_EQ(consecutive_distances(std::span(ds).first(3), std::span(ends).first(3)).size(), 2u);
}

TEST(ConsecutiveDistances, ThreadsDoNotChangeOutput) {
  std::mt19937_64 rng(13);
  std::vector<PersistenceDiagram> ds;
  std::vector<Date> ends;
  for (int i = 0; i < 40; ++i) {
    ds.push_back(oracle::random_diagram(rng, 10));
    ends.push_back(Date(2020, 1, 1 + static_cast<unsigned>(i % 28)) );
    if (i >= 28) ends.back() = Date(2020, 2, 1 + static_cast<unsigned>(i - 28));
  }
  EXPECT_EQ(consecutive_distances(ds, ends, 2.0, 1).values,
            consecutive_distances(ds, ends, 2.0, 4).values);
}

TEST(ConsecutiveDistances, Errors) {
  const std::vector<PersistenceDiagram> one{bars({})};
  const std::vector<Date> d1{Date(2020, 1, 1)};
  try {
    consecutive_distances(one, d1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewDiagrams);
  }
  const std::vector<PersistenceDiagram> mixed{bars({}, 0), bars({}, 1)};
  const std::vector<Date> d2{Date(2020, 1, 1), Date(2020, 1, 2)};
  EXPECT_THROW(consecutive_distances(mixed, d2), Error);
}
