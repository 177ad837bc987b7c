#include <gtest/gtest.h>

#include <cmath>

#include "citegraph/distance.hpp"
#include "citegraph/error.hpp"
#include "oracles.hpp"

using namespace citegraph;

namespace {

DistanceOptions opts(std::uint32_t sample, std::uint32_t reps, std::uint64_t seed, unsigned workers = 1) {
  DistanceOptions o;
  o.sample_size = sample;
  o.repetitions = reps;
  o.master_seed = seed;
  o.workers = workers;
  return o;
}

CitationGraph star(std::uint32_t leaves) {
  std::vector<Edge> edges;
  for (std::uint32_t s = 0; s < leaves; ++s) edges.push_back({s, 0});
  return oracle::graph_from(leaves, 1, edges);
}

}  // namespace

TEST(PairwiseDistance, CoCitationIsOne) {
  const auto g = oracle::graph_from(2, 1, {{0, 0}, {1, 0}});
  EXPECT_EQ(pairwise_distance(g, 0, 1), 1u);
  EXPECT_EQ(pairwise_distance(g, 0, 0), 0u);
}

TEST(PairwiseDistance, Chain) {
  // A-X-B-Y-C
  const auto g = oracle::graph_from(3, 2, {{0, 0}, {1, 0}, {1, 1}, {2, 1}});
  EXPECT_EQ(pairwise_distance(g, 0, 2), 2u);
}

TEST(PairwiseDistance, UnreachableAndRange) {
  const auto g = oracle::graph_from(2, 2, {{0, 0}, {1, 1}});
  EXPECT_FALSE(pairwise_distance(g, 0, 1).has_value());
  EXPECT_THROW(pairwise_distance(g, 0, 2), Error);
}

TEST(SampledMeanDistance, PairCountForFullSample) {
  Rng rng(3);
  const auto g = oracle::random_graph(rng, 2000, 4000, 10);
  const auto s = sampled_mean_distance(g, opts(2000, 1, 1, 0));
  EXPECT_EQ(s.pairs_per_repetition, 1999000u);
}

TEST(SampledMeanDistance, Star) {
  const auto s = sampled_mean_distance(star(20), opts(7, 5, 9));
  EXPECT_EQ(s.mean_distance, 1.0);
  EXPECT_EQ(s.sd_across_repetitions, 0.0);
  EXPECT_EQ(s.reachable_fraction, 1.0);
}

TEST(SampledMeanDistance, FullSampleMatchesExhaustiveOracle) {
  Rng rng(150);
  const auto g = oracle::random_graph(rng, 150, 260, 4);
  const auto s = sampled_mean_distance(g, opts(150, 1, 4));
  const auto want = oracle::all_pairs(g);
  EXPECT_EQ(s.mean_distance, want.mean());
  EXPECT_EQ(s.reachable_pairs, want.reachable);
  ASSERT_EQ(s.histogram.size(), want.histogram.size());
  std::size_t i = 0;
  for (const auto& [d, count] : want.histogram) {
    EXPECT_EQ(s.histogram[i].distance, d);
    EXPECT_EQ(s.histogram[i].count, count);
    ++i;
  }
}

TEST(SampledMeanDistance, ParameterErrors) {
  const auto g = star(5);
  EXPECT_THROW(sampled_mean_distance(g, opts(6, 1, 0)), Error);
  EXPECT_THROW(sampled_mean_distance(g, opts(1, 1, 0)), Error);
  EXPECT_THROW(sampled_mean_distance(g, opts(2, 0, 0)), Error);
}

TEST(SampledMeanDistance, HistogramIsNormalized) {
  Rng rng(8);
  const auto g = oracle::random_graph(rng, 300, 900, 5);
  const auto s = sampled_mean_distance(g, opts(120, 6, 17));
  double total = 0.0;
  for (const auto& b : s.histogram) total += b.probability;
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_GE(s.mean_distance, 1.0);
  EXPECT_EQ(s.repetition_means.size(), 6u);
}

TEST(SampledMeanDistance, WorkerCountDoesNotChangeResult) {
  Rng rng(21);
  const auto g = oracle::random_graph(rng, 500, 1500, 6);
  const auto a = sampled_mean_distance(g, opts(200, 5, 77, 1));
  const auto b = sampled_mean_distance(g, opts(200, 5, 77, 8));
  EXPECT_EQ(a.mean_distance, b.mean_distance);
  EXPECT_EQ(a.sd_across_repetitions, b.sd_across_repetitions);
  EXPECT_EQ(a.repetition_means, b.repetition_means);
  ASSERT_EQ(a.histogram.size(), b.histogram.size());
  for (std::size_t i = 0; i < a.histogram.size(); ++i) EXPECT_EQ(a.histogram[i].count, b.histogram[i].count);
}

TEST(SampledMeanDistance, SeedChangesSample) {
  Rng rng(22);
  const auto g = oracle::random_graph(rng, 400, 1500, 4);
  const auto a = sampled_mean_distance(g, opts(50, 3, 1));
  const auto b = sampled_mean_distance(g, opts(50, 3, 2));
  EXPECT_NE(a.repetition_means, b.repetition_means);
}

TEST(SampledMeanDistance, SdDoesNotGrowWithSampleSize) {
  Rng rng(40);
  const auto g = oracle::random_graph(rng, 1500, 5000, 6);
  int grew = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto small = sampled_mean_distance(g, opts(50, 10, seed, 0));
    const auto large = sampled_mean_distance(g, opts(400, 10, seed, 0));
    if (large.sd_across_repetitions > small.sd_across_repetitions) ++grew;
  }
  EXPECT_LE(grew, 3);
}

TEST(DistanceProperty, SymmetryAndTriangle) {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = oracle::random_graph(rng, 40, 70, 3);
    std::vector<std::vector<std::uint32_t>> d;
    std::vector<std::vector<double>> w;
    for (std::uint32_t s = 0; s < g.source_count(); ++s) {
      d.push_back(source_distances(g, s));
      w.push_back(weighted_source_distances(g, s));
    }
    const auto S = g.source_count();
    for (std::uint32_t a = 0; a < S; ++a) {
      for (std::uint32_t b = 0; b < S; ++b) {
        EXPECT_EQ(d[a][b], d[b][a]);
        if (std::isinf(w[a][b])) {
          EXPECT_TRUE(std::isinf(w[b][a]));
        } else {
          EXPECT_NEAR(w[a][b], w[b][a], 1e-12);
        }
        for (std::uint32_t c = 0; c < S; ++c) {
          if (d[a][b] == kUnreachable || d[b][c] == kUnreachable) continue;
          EXPECT_LE(d[a][c], d[a][b] + d[b][c]);
          EXPECT_LE(w[a][c], w[a][b] + w[b][c] + 1e-12);
        }
      }
    }
  }
}

TEST(DistanceProperty, HalvingOfRawPaths) {
  Rng rng(32);
  const auto g = oracle::random_graph(rng, 60, 90, 3);
  const auto raw = oracle::raw_source_distances(g);
  for (std::uint32_t a = 0; a < g.source_count(); ++a) {
    const auto d = source_distances(g, a);
    for (std::uint32_t b = 0; b < g.source_count(); ++b) {
      if (raw[a][b] == oracle::kNone) {
        EXPECT_EQ(d[b], kUnreachable);
        continue;
      }
      EXPECT_EQ(raw[a][b] % 2, 0u);
      EXPECT_EQ(d[b], raw[a][b] / 2);
    }
  }
}

TEST(WeightedDistance, FourSharedReferences) {
  const auto g = oracle::graph_from(2, 5, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}});
  EXPECT_DOUBLE_EQ(weighted_source_distances(g, 0)[1], 0.25);
}

TEST(WeightedDistance, IdenticalListsGiveOneOverK) {
  for (std::uint32_t k = 1; k <= 6; ++k) {
    std::vector<Edge> edges;
    for (std::uint32_t t = 0; t < k; ++t) {
      edges.push_back({0, t});
      edges.push_back({1, t});
    }
    std::sort(edges.begin(), edges.end());
    const auto g = oracle::graph_from(2, k, edges);
    EXPECT_DOUBLE_EQ(weighted_source_distances(g, 1)[0], 1.0 / k);
  }
}

TEST(WeightedDistance, MixedOverlapFixtureMatchesOracle) {
  // s0-s1 share 1, s1-s2 share 3, s0-s2 share 0, s2-s3 share 2, s0-s3 share 1
  const auto g = oracle::graph_from(4, 7,
                                    {{0, 0}, {0, 6}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3},
                                     {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}});
  const auto want = oracle::weighted_all_pairs(g);
  for (std::uint32_t a = 0; a < 4; ++a) {
    const auto got = weighted_source_distances(g, a);
    for (std::uint32_t b = 0; b < 4; ++b) EXPECT_NEAR(got[b], want[a][b], 1e-12);
  }
  // s0 -> s2: via s1 is 1 + 1/3, via s3 is 1 + 1/2
  EXPECT_NEAR(weighted_source_distances(g, 0)[2], 4.0 / 3.0, 1e-12);
}

TEST(WeightedDistance, SummaryMatchesOracleMean) {
  Rng rng(9);
  const auto g = oracle::random_graph(rng, 80, 120, 5);
  const auto s = weighted_distance_summary(g, opts(80, 1, 0));
  const auto w = oracle::weighted_all_pairs(g);
  double sum = 0.0;
  std::uint64_t n = 0;
  for (std::uint32_t a = 0; a < 80; ++a) {
    for (std::uint32_t b = a + 1; b < 80; ++b) {
      if (std::isinf(w[a][b])) continue;
      sum += w[a][b];
      ++n;
    }
  }
  EXPECT_TRUE(s.weighted);
  EXPECT_EQ(s.reachable_pairs, n);
  EXPECT_NEAR(s.mean_distance, sum / n, 1e-9);
}

TEST(GaussianFit, SinglePointIsDegenerate) {
  const std::vector<HistogramBin> h{{1.0, 10, 1.0}};
  const auto f = fit_gaussian(h);
  EXPECT_EQ(f.mu, 1.0);
  EXPECT_TRUE(f.degenerate);
}

TEST(GaussianFit, TwoSymmetricPoints) {
  const std::vector<HistogramBin> h{{2.0, 1, 0.5}, {4.0, 1, 0.5}};
  const auto f = fit_gaussian(h);
  EXPECT_DOUBLE_EQ(f.mu, 3.0);
  EXPECT_DOUBLE_EQ(f.sigma, 1.0);
  EXPECT_FALSE(f.degenerate);
}

TEST(GaussianFit, CenterMatchesSummaryMean) {
  Rng rng(12);
  const auto g = oracle::random_graph(rng, 400, 1000, 5);
  const auto s = sampled_mean_distance(g, opts(150, 4, 3));
  const auto f = fit_gaussian(s.histogram);
  EXPECT_NEAR(f.mu, s.mean_distance, 1e-9);
  EXPECT_GT(f.sigma, 0.0);
  EXPECT_THROW(fit_gaussian({}), Error);
}

TEST(MultiSourceBfs, AgreesWithSingleSourceBfs) {
  Rng rng(13);
  const auto g = oracle::random_graph(rng, 200, 300, 3);
  std::vector<std::uint32_t> roots;
  for (std::uint32_t i = 0; i < 64; ++i) roots.push_back(i * 3);
  std::vector<std::vector<std::uint32_t>> got(roots.size(), std::vector<std::uint32_t>(200, kUnreachable));
  for (std::size_t i = 0; i < roots.size(); ++i) got[i][roots[i]] = 0;
  MultiSourceBfs bfs(g);
  bfs.run(roots, [&](std::uint32_t s, std::uint32_t level, std::uint64_t bits) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (bits >> i & 1) got[i][s] = level;
    }
  });
  for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_EQ(got[i], source_distances(g, roots[i]));
}
