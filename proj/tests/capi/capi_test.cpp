#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "citegraph/citegraph.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// A and B co-cite X, B and C co-cite Y; D is from another year.
const char* kNodes = "A\t2000\tphys\nB\t2000\tphys|math\nC\t2000\tmath\nD\t1999\tbio\n";
const char* kEdges = "A\tX\nB\tX\nB\tY\nC\tY\nC\tZ\nD\tX\n";

struct Fixture : ::testing::Test {
  TempDir dir{"citegraph_capi_test"};
  cg_corpus* corpus = nullptr;
  cg_graph* graph = nullptr;

  void SetUp() override {
    write(dir.path / "nodes.tsv", kNodes);
    write(dir.path / "edges.tsv", kEdges);
    ASSERT_EQ(cg_corpus_load((dir.path / "nodes.tsv").c_str(), (dir.path / "edges.tsv").c_str(), &corpus), CG_OK);
    ASSERT_EQ(cg_graph_build(corpus, 2000, &graph), CG_OK);
  }
  void TearDown() override {
    cg_graph_free(graph);
    cg_corpus_free(corpus);
  }
};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_GT(std::strlen(cg_version()), 0u);
  EXPECT_STREQ(cg_status_name(CG_OK), "ok");
  EXPECT_STRNE(cg_status_name(CG_ERR_PARSE), cg_status_name(CG_ERR_IO));
}

TEST(CApi, NullHandlesAreInvalidArguments) {
  cg_graph_counts counts;
  EXPECT_EQ(cg_graph_counts_get(nullptr, &counts), CG_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(cg_last_error()), "");
  cg_corpus* c = nullptr;
  EXPECT_EQ(cg_corpus_load(nullptr, "x", &c), CG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(c, nullptr);
  cg_result* r = nullptr;
  EXPECT_EQ(cg_distances(nullptr, nullptr, &r), CG_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cg_pct_change("category\n", "category\n", nullptr), CG_ERR_INVALID_ARGUMENT);
  cg_graph_free(nullptr);
  cg_result_free(nullptr);
  cg_corpus_free(nullptr);
  cg_categories_free(nullptr);
}

TEST(CApi, MissingFileIsIoError) {
  cg_corpus* c = nullptr;
  EXPECT_EQ(cg_corpus_load("/nonexistent/nodes.tsv", "/nonexistent/edges.tsv", &c), CG_ERR_IO);
  EXPECT_NE(std::string(cg_last_error()).find("nodes"), std::string::npos);
}

TEST(CApi, LastErrorIsPerThread) {
  cg_graph_counts counts;
  ASSERT_EQ(cg_graph_counts_get(nullptr, &counts), CG_ERR_INVALID_ARGUMENT);
  const std::string mine = cg_last_error();
  std::string theirs = "unset";
  std::thread([&] { theirs = cg_last_error(); }).join();
  EXPECT_EQ(theirs, "");
  EXPECT_EQ(std::string(cg_last_error()), mine);
}

TEST(CApi, ParseErrorCarriesLocation) {
  TempDir d("citegraph_capi_parse");
  write(d.path / "nodes.tsv", "A\tnotayear\t\n");
  write(d.path / "edges.tsv", "");
  cg_corpus* c = nullptr;
  EXPECT_EQ(cg_corpus_load((d.path / "nodes.tsv").c_str(), (d.path / "edges.tsv").c_str(), &c), CG_ERR_PARSE);
  EXPECT_NE(std::string(cg_last_error()).find(":1"), std::string::npos);
}

TEST_F(Fixture, CountsDegreesAndLookup) {
  cg_graph_counts counts;
  ASSERT_EQ(cg_graph_counts_get(graph, &counts), CG_OK);
  EXPECT_EQ(counts.sources, 3u);
  EXPECT_EQ(counts.targets, 3u);
  EXPECT_EQ(counts.edges, 5u);
  std::vector<uint32_t> deg(3);
  ASSERT_EQ(cg_graph_source_degrees(graph, deg.data(), deg.size()), CG_OK);
  EXPECT_EQ(deg, (std::vector<uint32_t>{1, 2, 2}));
  EXPECT_EQ(cg_graph_source_degrees(graph, deg.data(), 2), CG_ERR_INVALID_ARGUMENT);
  int64_t s = 0, t = 0;
  ASSERT_EQ(cg_graph_lookup(graph, "B", &s, &t), CG_OK);
  EXPECT_EQ(s, 1);
  EXPECT_EQ(t, -1);
  ASSERT_EQ(cg_graph_lookup(graph, "D", &s, &t), CG_OK);
  EXPECT_EQ(s, -1);
}

TEST_F(Fixture, PairwiseDistance) {
  int reachable = 0;
  uint32_t d = 0;
  ASSERT_EQ(cg_pairwise_distance(graph, 0, 2, &reachable, &d), CG_OK);
  EXPECT_EQ(reachable, 1);
  EXPECT_EQ(d, 2u);
  EXPECT_EQ(cg_pairwise_distance(graph, 0, 9, &reachable, &d), CG_ERR_OUT_OF_RANGE);
}

TEST_F(Fixture, DistanceResultCarriesHistogram) {
  cg_distance_params p;
  cg_distance_params_init(&p);
  EXPECT_EQ(p.sample_size, 2000u);
  EXPECT_EQ(p.repetitions, 30u);
  p.sample_size = 3;
  p.repetitions = 2;
  cg_result* r = nullptr;
  ASSERT_EQ(cg_distances(graph, &p, &r), CG_OK) << cg_last_error();
  const auto json = nlohmann::json::parse(cg_result_json(r));
  // all three pairs: 1, 1, 2
  EXPECT_DOUBLE_EQ(json["mean_distance"].get<double>(), 4.0 / 3.0);
  ASSERT_EQ(cg_result_table_count(r), 1u);
  EXPECT_STREQ(cg_result_table_name(r, 0), "histogram");
  EXPECT_EQ(std::string(cg_result_table(r, "histogram")).rfind("distance,probability\n", 0), 0u);
  EXPECT_EQ(cg_result_table(r, "nope"), nullptr);
  EXPECT_EQ(cg_result_table_name(r, 5), nullptr);
  cg_result_free(r);
}

TEST_F(Fixture, SnapshotRoundTrip) {
  const auto path = dir.path / "g.cgbg";
  ASSERT_EQ(cg_graph_save(graph, path.c_str()), CG_OK);
  cg_graph* back = nullptr;
  ASSERT_EQ(cg_graph_load(path.c_str(), &back), CG_OK);
  cg_graph_counts a, b;
  cg_graph_counts_get(graph, &a);
  cg_graph_counts_get(back, &b);
  EXPECT_EQ(a.edges, b.edges);
  int64_t s = 0, t = 0;
  cg_graph_lookup(back, "C", &s, &t);
  EXPECT_EQ(s, 2);
  cg_graph_free(back);
  write(path, "garbage");
  EXPECT_EQ(cg_graph_load(path.c_str(), &back), CG_ERR_PARSE);
}

TEST_F(Fixture, FieldsAndImpact) {
  cg_categories* cats = nullptr;
  ASSERT_EQ(cg_categories_from_corpus(corpus, nullptr, &cats), CG_OK);
  cg_result* r = nullptr;
  ASSERT_EQ(cg_fields(graph, cats, 0, &r), CG_OK) << cg_last_error();
  EXPECT_NE(cg_result_table(r, "matrix"), nullptr);
  EXPECT_NE(cg_result_table(r, "hh"), nullptr);
  EXPECT_NE(cg_result_table(r, "within"), nullptr);
  cg_result_free(r);
  ASSERT_EQ(cg_clustering(graph, cats, CG_FILTER_SAME_CATEGORY, 1, 1, &r), CG_OK) << cg_last_error();
  EXPECT_NE(cg_result_table(r, "edges"), nullptr);
  cg_result_free(r);
  EXPECT_EQ(cg_clustering(graph, nullptr, CG_FILTER_CROSS_CATEGORY, 0, 1, &r), CG_ERR_CONFIG);
  cg_categories_free(cats);

  const double fr[] = {0.5};
  ASSERT_EQ(cg_impact(graph, fr, 1, &r), CG_OK) << cg_last_error();
  EXPECT_NE(std::string(cg_result_json(r)).find("\"gini\""), std::string::npos);
  cg_result_free(r);
}

TEST(CApi, ScalarKernels) {
  const uint32_t deg[] = {1, 2, 2, 4};
  double g = -1;
  uint64_t excluded = 0;
  ASSERT_EQ(cg_gini(deg, 4, &g, &excluded), CG_OK);
  EXPECT_EQ(excluded, 1u);
  // retained {2,2,4}: sum|xi-xj| = 8, 2 n^2 mean = 48
  EXPECT_NEAR(g, 8.0 / 48.0, 1e-15);
  const uint32_t ones[] = {1, 1};
  EXPECT_EQ(cg_gini(ones, 2, &g, &excluded), CG_ERR_EMPTY_DISTRIBUTION);

  const double shares[] = {50.0, 30.0, 20.0};
  int defined = 0;
  double hh = 0;
  ASSERT_EQ(cg_hh_index(shares, 3, 1, 0, &defined, &hh), CG_OK);
  EXPECT_EQ(defined, 1);
  EXPECT_NEAR(hh, 0.36 + 0.16, 1e-12);
  EXPECT_EQ(cg_hh_index(shares, 3, 1, 7, &defined, &hh), CG_ERR_OUT_OF_RANGE);

  double share = 0;
  EXPECT_EQ(cg_top_share(deg, 4, 1.5, &share), CG_ERR_INVALID_ARGUMENT);
}

TEST(CApi, FromEdgesValidates) {
  const uint32_t s[] = {0, 1};
  const uint32_t t[] = {0, 3};
  cg_graph* g = nullptr;
  EXPECT_EQ(cg_graph_from_edges(2, 2, s, t, 2, &g), CG_ERR_OUT_OF_RANGE);
  EXPECT_EQ(g, nullptr);
  const uint32_t t_ok[] = {0, 0};
  ASSERT_EQ(cg_graph_from_edges(2, 1, s, t_ok, 2, &g), CG_OK);
  uint64_t obs = 9;
  double expected = 0, c = 0;
  int defined = 1;
  ASSERT_EQ(cg_edge_clustering(g, 0, 0, &obs, &expected, &defined, &c), CG_OK);
  EXPECT_EQ(obs, 0u);
  EXPECT_EQ(defined, 0);
  cg_graph_free(g);
}

TEST(CApi, NullNetworkMatchesEnsemble) {
  std::vector<uint32_t> s, t;
  for (uint32_t i = 0; i < 30; ++i) {
    for (uint32_t k = 0; k < 3; ++k) {
      s.push_back(i);
      t.push_back((i * 7 + k * 5) % 40);
    }
  }
  cg_graph* g = nullptr;
  ASSERT_EQ(cg_graph_from_edges(30, 40, s.data(), t.data(), s.size(), &g), CG_OK) << cg_last_error();
  cg_null_params p;
  cg_null_params_init(&p);
  p.networks = 3;
  p.sample_size = 30;
  p.workers = 1;
  cg_result* r = nullptr;
  ASSERT_EQ(cg_null_baseline(g, &p, &r), CG_OK) << cg_last_error();
  const std::string json = cg_result_json(r);
  cg_result_free(r);
  cg_graph* n1 = nullptr;
  uint64_t accepted = 0;
  ASSERT_EQ(cg_null_network(g, &p, 1, &n1, &accepted), CG_OK);
  EXPECT_NE(json.find(std::to_string(accepted)), std::string::npos);
  std::vector<uint32_t> d0(40), d1(40);
  cg_graph_target_degrees(g, d0.data(), 40);
  cg_graph_target_degrees(n1, d1.data(), 40);
  EXPECT_EQ(d0, d1);
  EXPECT_EQ(cg_null_network(g, &p, 3, &n1, &accepted), CG_ERR_OUT_OF_RANGE);
  cg_graph_free(n1);
  cg_graph_free(g);
}

TEST(CApi, PctChangeFromText) {
  cg_result* r = nullptr;
  ASSERT_EQ(cg_pct_change("category,A,B\nA,2,4\n", "category,A,B\nA,3,2\n", &r), CG_OK) << cg_last_error();
  const auto json = nlohmann::json::parse(cg_result_json(r));
  EXPECT_EQ(json["fraction_increased"].get<double>(), 0.5);
  EXPECT_NE(cg_result_table(r, "cdf"), nullptr);
  cg_result_free(r);
  EXPECT_EQ(cg_pct_change("category,A\nA,x\n", "category,A\nA,1\n", &r), CG_ERR_PARSE);
}

TEST(CApi, SynthBadConfig) {
  TempDir d("citegraph_capi_synth");
  cg_result* r = nullptr;
  EXPECT_EQ(cg_synth("{\"epochs\": 0}", d.path.c_str(), 1, &r), CG_ERR_CONFIG);
}
