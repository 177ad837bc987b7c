#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "citegraph/clustering.hpp"
#include "citegraph/corpus.hpp"
#include "citegraph/error.hpp"
#include "citegraph/fields.hpp"
#include "oracles.hpp"

using namespace citegraph;

namespace {

CitationGraph k22() { return oracle::graph_from(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

void expect_matches_oracle(const CitationGraph& g) {
  for (const auto& e : g.edges()) {
    const auto got = edge_clustering(g, e.source, e.target);
    const auto want = oracle::clustering(g, e.source, e.target);
    EXPECT_EQ(got.observed, want.observed);
    EXPECT_NEAR(got.expected, want.expected, 1e-12);
    ASSERT_EQ(got.c.has_value(), want.c.has_value());
    if (got.c) EXPECT_NEAR(*got.c, *want.c, 1e-12);
  }
}

}  // namespace

TEST(EdgeClustering, NoConnectingCitation) {
  // s0-t0, s1-t0, s0-t1: neighbourhoods {s1} and {t1} are not linked
  const auto g = oracle::graph_from(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  const auto r = edge_clustering(g, 0, 0);
  EXPECT_EQ(r.observed, 0u);
  EXPECT_FALSE(r.c.has_value());
}

TEST(EdgeClustering, CompleteBipartite22) {
  const auto g = k22();
  for (const auto& e : g.edges()) {
    const auto r = edge_clustering(g, e.source, e.target);
    EXPECT_EQ(r.observed, 1u);
    EXPECT_DOUBLE_EQ(r.expected, 1.0);
    ASSERT_TRUE(r.c.has_value());
    EXPECT_EQ(*r.c, 0.0);
  }
  const auto d = clustering_distribution(g, EdgeFilter::All, nullptr, 1);
  EXPECT_EQ(d.defined, 4u);
  EXPECT_EQ(d.c_stats.mean, 0.0);
}

TEST(EdgeClustering, SixNodeFixtureWithCrossEdge) {
  // K22 on (s0,s1)x(t0,t1) plus s2 citing t1 and t2, and the extra cross edge s1-t2
  const auto g = oracle::graph_from(3, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
  expect_matches_oracle(g);
  const auto r = edge_clustering(g, 0, 1);
  // S' = {s1, s2}, T' = {t0}; observed = s1-t0; expected = (3 + 2) * 2 / 7
  EXPECT_EQ(r.observed, 1u);
  EXPECT_NEAR(r.expected, 10.0 / 7.0, 1e-15);
  EXPECT_NEAR(*r.c, std::log(0.7), 1e-15);
}

TEST(EdgeClustering, MissingEdgeRejected) {
  EXPECT_THROW(edge_clustering(oracle::graph_from(2, 2, {{0, 0}, {1, 1}}), 0, 1), Error);
}

TEST(EdgeClustering, RandomGraphsMatchOracle) {
  Rng rng(44);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = oracle::random_graph(rng, 20 + trial, 25, 6);
    expect_matches_oracle(g);
  }
}

TEST(EdgeClusteringProperty, AddingBridgeRaisesObserved) {
  // focal (s0,t0); S' = {s1}, T' = {t1}; adding s1-t1 links them
  const auto before = oracle::graph_from(3, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}});
  const auto after = oracle::graph_from(3, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const auto a = edge_clustering(before, 0, 0);
  const auto b = edge_clustering(after, 0, 0);
  EXPECT_EQ(b.observed, a.observed + 1);
  // extend with another edge to compare two defined values
  const auto more = oracle::graph_from(3, 4, {{0, 0}, {0, 1}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const auto more2 = oracle::graph_from(3, 4, {{0, 0}, {0, 1}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}});
  const auto c1 = edge_clustering(more, 0, 0);
  const auto c2 = edge_clustering(more2, 0, 0);
  ASSERT_TRUE(c1.c && c2.c);
  EXPECT_EQ(c2.observed, c1.observed + 1);
  EXPECT_GT(*c2.c, *c1.c);
}

TEST(EdgeClusteringProperty, ExpectedPositiveWhenNeighbourhoodsNonEmpty) {
  Rng rng(45);
  const auto g = oracle::random_graph(rng, 40, 30, 5);
  for (const auto& e : g.edges()) {
    const auto r = edge_clustering(g, e.source, e.target);
    if (g.source_degree(e.source) > 1 && g.target_degree(e.target) > 1) EXPECT_GT(r.expected, 0.0);
  }
}

TEST(ClusteringDistribution, DisjointPairsAllUndefined) {
  const auto g = oracle::graph_from(4, 2, {{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  const auto d = clustering_distribution(g, EdgeFilter::All, nullptr, 1);
  EXPECT_EQ(d.undefined, g.edge_count());
  EXPECT_EQ(d.defined, 0u);
  EXPECT_EQ(d.undefined_fraction, 1.0);
  EXPECT_TRUE(std::isnan(d.c_stats.mean));
}

TEST(ClusteringDistribution, FilterNeedsCategories) {
  EXPECT_THROW(clustering_distribution(k22(), EdgeFilter::SameCategory, nullptr), Error);
}

TEST(ClusteringDistribution, DenseBlockIsMoreEmbeddedThanCrossEdges) {
  // Category A: sources a0..a3 fully cite targets ta0..ta3. Category B: b0..b3
  // each cite two B targets in a ring. Cross edges: a_i -> tb_i, b_i -> ta_i.
  std::string nodes, edges;
  for (int i = 0; i < 4; ++i) {
    nodes += "a" + std::to_string(i) + "\t2000\tA\n";
    nodes += "b" + std::to_string(i) + "\t2000\tB\n";
    nodes += "ta" + std::to_string(i) + "\t1999\tA\n";
    nodes += "tb" + std::to_string(i) + "\t1999\tB\n";
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) edges += "a" + std::to_string(i) + "\tta" + std::to_string(j) + "\n";
    edges += "b" + std::to_string(i) + "\ttb" + std::to_string(i) + "\n";
    edges += "b" + std::to_string(i) + "\ttb" + std::to_string((i + 1) % 4) + "\n";
    edges += "a" + std::to_string(i) + "\ttb" + std::to_string(i) + "\n";
    edges += "b" + std::to_string(i) + "\tta" + std::to_string(i) + "\n";
  }
  std::istringstream n(nodes), e(edges);
  const auto corpus = parse_corpus(n, "nodes", e, "edges");
  const auto g = build_graph(corpus.papers, corpus.citations, 2000).graph;
  const auto table = CategoryTable::from_papers(corpus.papers);
  const auto cats = categorize(g, table);
  expect_matches_oracle(g);
  const auto same = clustering_distribution(g, EdgeFilter::SameCategory, &cats, 1);
  const auto cross = clustering_distribution(g, EdgeFilter::CrossCategory, &cats, 1);
  EXPECT_EQ(same.edges + cross.edges, g.edge_count());
  ASSERT_GT(same.defined, 0u);
  ASSERT_GT(cross.defined, 0u);
  EXPECT_GT(same.c_stats.mean, cross.c_stats.mean);
  const auto all = clustering_distribution(g, EdgeFilter::All, &cats, 1, true);
  EXPECT_EQ(all.records.size(), g.edge_count());
  EXPECT_EQ(all.relations.size(), g.edge_count());
}

TEST(ClusteringDistribution, WorkerCountDoesNotChangeRecords) {
  Rng rng(46);
  const auto g = oracle::random_graph(rng, 300, 200, 8);
  const auto a = clustering_distribution(g, EdgeFilter::All, nullptr, 1, true);
  const auto b = clustering_distribution(g, EdgeFilter::All, nullptr, 8, true);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].source, b.records[i].source);
    EXPECT_EQ(a.records[i].target, b.records[i].target);
    EXPECT_EQ(a.records[i].observed, b.records[i].observed);
    EXPECT_EQ(a.records[i].expected, b.records[i].expected);
  }
  EXPECT_EQ(a.c_stats.mean, b.c_stats.mean);
}
