#include <gtest/gtest.h>

#include <cmath>

#include "citegraph/distance.hpp"
#include "citegraph/error.hpp"
#include "citegraph/impact.hpp"
#include "oracles.hpp"

using namespace citegraph;

namespace {

double trapezoid_gini(const LorenzResult& l) {
  double area = 0.0;
  for (std::size_t i = 1; i < l.points.size(); ++i) {
    const auto [p0, l0] = l.points[i - 1];
    const auto [p1, l1] = l.points[i];
    area += (p1 - p0) * (l0 + l1) / 2.0;
  }
  return 1.0 - 2.0 * area;
}

std::vector<std::uint32_t> random_degrees(Rng& rng, std::size_t n) {
  std::vector<std::uint32_t> d(n);
  for (auto& x : d) x = 1 + static_cast<std::uint32_t>(rng.below(1 + rng.below(200)));
  d[0] = 2;
  return d;
}

}  // namespace

TEST(LorenzGini, PerfectEquality) {
  const std::vector<std::uint32_t> d{5, 5, 5, 5};
  const auto l = lorenz_gini(d);
  EXPECT_EQ(l.gini, 0.0);
  for (const auto& [p, v] : l.points) EXPECT_NEAR(v, p, 1e-15);
}

TEST(LorenzGini, SmallVectorMatchesPairwiseOracle) {
  const std::vector<std::uint32_t> d{2, 3, 5, 10};
  EXPECT_NEAR(lorenz_gini(d).gini, oracle::gini(d), 1e-12);
}

TEST(LorenzGini, DegreeOneExcluded) {
  const std::vector<std::uint32_t> d{2, 2, 2, 1, 1};
  const auto l = lorenz_gini(d);
  EXPECT_EQ(l.excluded_degree_one, 2u);
  EXPECT_EQ(l.n, 3u);
  EXPECT_EQ(l.gini, 0.0);
}

TEST(LorenzGini, EmptyDistribution) {
  const std::vector<std::uint32_t> ones{1, 1, 0};
  EXPECT_THROW(lorenz_gini(ones), Error);
  EXPECT_THROW(lorenz_gini({}), Error);
}

TEST(LorenzGiniProperty, CurveShapeAndTrapezoid) {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_degrees(rng, 5 + rng.below(300));
    const auto l = lorenz_gini(d);
    ASSERT_EQ(l.points.front(), std::make_pair(0.0, 0.0));
    EXPECT_NEAR(l.points.back().first, 1.0, 1e-15);
    EXPECT_NEAR(l.points.back().second, 1.0, 1e-15);
    for (std::size_t i = 1; i < l.points.size(); ++i) {
      EXPECT_GE(l.points[i].second, l.points[i - 1].second);
      EXPECT_LE(l.points[i].second, l.points[i].first + 1e-12);
      if (i + 1 < l.points.size()) {
        const double s0 = l.points[i].second - l.points[i - 1].second;
        const double s1 = l.points[i + 1].second - l.points[i].second;
        EXPECT_GE(s1, s0 - 1e-15);
      }
    }
    EXPECT_NEAR(l.gini, trapezoid_gini(l), 1e-9);
    EXPECT_GE(l.gini, 0.0);
    EXPECT_LT(l.gini, 1.0);
  }
}

TEST(LorenzGiniProperty, ScaleInvariance) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_degrees(rng, 50);
    for (auto& x : d) x = std::max<std::uint32_t>(x, 2);
    auto scaled = d;
    const auto c = static_cast<std::uint32_t>(2 + rng.below(7));
    for (auto& x : scaled) x *= c;
    EXPECT_NEAR(lorenz_gini(d).gini, lorenz_gini(scaled).gini, 1e-12);
  }
}

TEST(TopShare, UniformDegrees) {
  const std::vector<std::uint32_t> d(50, 4);
  EXPECT_NEAR(top_share(d, 0.1), 0.1, 1e-15);
}

TEST(TopShare, SingleSurvivor) {
  std::vector<std::uint32_t> d(10, 1);
  d[0] = 10;
  // a quarter of the only retained rank
  EXPECT_EQ(top_share(d, 0.25), 0.25);
}

TEST(TopShare, FractionalLastRank) {
  const std::vector<std::uint32_t> d{10, 6, 4};
  // top 0.5 of 3 ranks: 10 + 0.5 * 6
  EXPECT_NEAR(top_share(d, 0.5), 13.0 / 20.0, 1e-15);
}

TEST(TopShare, PowerLawMatchesSortAndSum) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint32_t> d(1000);
    for (auto& x : d) x = static_cast<std::uint32_t>(std::floor(std::pow(1.0 - rng.uniform(), -1.0 / 1.3)));
    d[0] = 3;
    for (double f : {0.01, 0.04, 0.1, 0.333}) EXPECT_NEAR(top_share(d, f), oracle::top_share(d, f), 1e-12);
  }
}

TEST(TopShare, RangeChecked) {
  const std::vector<std::uint32_t> d{2, 3};
  EXPECT_THROW(top_share(d, 0.0), Error);
  EXPECT_THROW(top_share(d, 1.0), Error);
}

TEST(Removal, OrderAndCount) {
  // t0 deg 1, t1 deg 3, t2 deg 3, t3 deg 2
  const auto g = oracle::graph_from(3, 4, {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {2, 2}, {2, 3}});
  EXPECT_EQ(removal_order(g), (std::vector<std::uint32_t>{1, 2, 3, 0}));
  EXPECT_EQ(removal_count(g, 0.0), 0u);
  EXPECT_EQ(removal_count(g, 0.25), 1u);
  EXPECT_EQ(removal_count(g, 0.26), 2u);
  EXPECT_EQ(removal_count(g, 0.5), 2u);
}

TEST(Removal, HubRemovalForcesDetour) {
  // s0..s3 cite hub t0; s0-t1-s4-t2-s1 is the detour
  const auto g = oracle::graph_from(5, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 0}, {3, 0}, {4, 1}, {4, 2}});
  EXPECT_EQ(source_distances(g, 0)[1], 1u);
  const std::vector<std::uint8_t> mask{1, 0, 0};
  const auto d = source_distances(g, 0, mask);
  EXPECT_EQ(d[1], 2u);
  EXPECT_EQ(d[4], 1u);
  EXPECT_EQ(d[2], kUnreachable);
  EXPECT_EQ(d[3], kUnreachable);

  DistanceOptions o;
  o.sample_size = 5;
  o.repetitions = 1;
  const std::vector<double> fractions{0.2};
  const auto curve = removal_robustness(g, fractions, o);
  ASSERT_EQ(curve.points.size(), 2u);
  EXPECT_EQ(curve.points[0].pct_increase, 0.0);
  EXPECT_EQ(curve.points[1].removed_targets, 1u);
  // after removal the reachable pairs are s0-s4, s1-s4 at 1 and s0-s1 at 2
  EXPECT_DOUBLE_EQ(curve.points[1].mean_distance, 4.0 / 3.0);
  EXPECT_NEAR(curve.points[1].reachable_fraction, 0.3, 1e-15);
}

TEST(Removal, BaselineMatchesDistanceSummary) {
  Rng rng(5);
  const auto g = oracle::random_graph(rng, 200, 500, 6);
  DistanceOptions o;
  o.sample_size = 80;
  o.repetitions = 4;
  o.master_seed = 9;
  const std::vector<double> fractions{0.0, 0.005, 0.05};
  const auto curve = removal_robustness(g, fractions, o);
  ASSERT_EQ(curve.points.size(), 3u);
  EXPECT_EQ(curve.points[0].fraction, 0.0);
  EXPECT_EQ(curve.points[0].mean_distance, sampled_mean_distance(g, o).mean_distance);
  EXPECT_EQ(curve.points[0].pct_increase, 0.0);
}

TEST(Removal, FractionsValidated) {
  const auto g = oracle::graph_from(2, 1, {{0, 0}, {1, 0}});
  DistanceOptions o;
  o.sample_size = 2;
  o.repetitions = 1;
  const std::vector<double> unsorted{0.05, 0.005};
  const std::vector<double> out_of_range{1.0};
  EXPECT_THROW(removal_robustness(g, unsorted, o), Error);
  EXPECT_THROW(removal_robustness(g, out_of_range, o), Error);
}

TEST(RemovalProperty, NeverShortensFiniteDistances) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_graph(rng, 60, 80, 4);
    std::vector<std::uint8_t> mask(g.target_count(), 0);
    for (auto t : sample_without_replacement(rng, g.target_count(), 8)) mask[t] = 1;
    for (std::uint32_t s = 0; s < g.source_count(); ++s) {
      const auto base = source_distances(g, s);
      const auto cut = source_distances(g, s, mask);
      for (std::uint32_t b = 0; b < g.source_count(); ++b) {
        if (cut[b] != kUnreachable) EXPECT_GE(cut[b], base[b]);
      }
    }
  }
}
