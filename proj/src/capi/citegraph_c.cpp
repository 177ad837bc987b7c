#include "citegraph/citegraph.h"

#include <fstream>
#include <map>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "citegraph/clustering.hpp"
#include "citegraph/corpus.hpp"
#include "citegraph/distance.hpp"
#include "citegraph/error.hpp"
#include "citegraph/fields.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/impact.hpp"
#include "citegraph/null_model.hpp"
#include "citegraph/rng.hpp"
#include "citegraph/serialize.hpp"
#include "citegraph/synth.hpp"

struct cg_corpus {
  citegraph::Corpus corpus;
};

struct cg_graph {
  citegraph::CitationGraph graph;
  std::optional<citegraph::BuildReport> report;
};

struct cg_categories {
  citegraph::CategoryTable table;
};

struct cg_result {
  std::string json;
  std::vector<std::pair<std::string, std::string>> tables;
};

namespace {

thread_local std::string g_last_error;

cg_status to_status(citegraph::ErrorKind kind) {
  using citegraph::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument: return CG_ERR_INVALID_ARGUMENT;
    case ErrorKind::OutOfRange: return CG_ERR_OUT_OF_RANGE;
    case ErrorKind::Io: return CG_ERR_IO;
    case ErrorKind::Parse: return CG_ERR_PARSE;
    case ErrorKind::Conflict: return CG_ERR_CONFLICT;
    case ErrorKind::Config: return CG_ERR_CONFIG;
    case ErrorKind::EmptyDistribution: return CG_ERR_EMPTY_DISTRIBUTION;
  }
  return CG_ERR_INTERNAL;
}

template <class Fn>
cg_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return CG_OK;
  } catch (const citegraph::Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return CG_ERR_INTERNAL;
  }
}

template <class T>
const T& deref(const T* p, const char* what) {
  if (!p) citegraph::fail(citegraph::ErrorKind::InvalidArgument, std::string(what) + " is NULL");
  return *p;
}

const char* cstr(const char* p, const char* what) {
  if (!p) citegraph::fail(citegraph::ErrorKind::InvalidArgument, std::string(what) + " is NULL");
  return p;
}

template <class T>
void need_out(T* p) {
  if (!p) citegraph::fail(citegraph::ErrorKind::InvalidArgument, "output pointer is NULL");
}

citegraph::DistanceOptions distance_options(const cg_distance_params* params) {
  cg_distance_params p;
  if (params) {
    p = *params;
  } else {
    cg_distance_params_init(&p);
  }
  citegraph::DistanceOptions o;
  o.sample_size = p.sample_size;
  o.repetitions = p.repetitions;
  o.master_seed = p.master_seed;
  o.workers = p.workers;
  return o;
}

void deliver(cg_result** out, cg_result&& r) { *out = new cg_result(std::move(r)); }

}  // namespace

extern "C" {

const char* cg_version(void) { return CITEGRAPH_VERSION_STRING; }

const char* cg_status_name(cg_status status) {
  switch (status) {
    case CG_OK: return "ok";
    case CG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CG_ERR_OUT_OF_RANGE: return "out_of_range";
    case CG_ERR_IO: return "io";
    case CG_ERR_PARSE: return "parse";
    case CG_ERR_CONFLICT: return "conflict";
    case CG_ERR_CONFIG: return "config";
    case CG_ERR_EMPTY_DISTRIBUTION: return "empty_distribution";
    case CG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cg_last_error(void) { return g_last_error.c_str(); }

cg_status cg_corpus_load(const char* nodes_path, const char* edges_path, cg_corpus** out) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    cstr(nodes_path, "nodes_path");
    cstr(edges_path, "edges_path");
    *out = new cg_corpus{citegraph::load_corpus(nodes_path, edges_path)};
  });
}

void cg_corpus_free(cg_corpus* corpus) { delete corpus; }

cg_status cg_corpus_summarize(const cg_corpus* corpus, cg_corpus_summary* out) {
  return guarded([&] {
    need_out(out);
    const auto& c = deref(corpus, "corpus").corpus;
    const auto s = citegraph::corpus_summary(c.papers, c.citations);
    *out = {s.sources, s.targets, s.edges, s.mean_references};
  });
}

cg_status cg_corpus_report(const cg_corpus* corpus, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto& c = deref(corpus, "corpus").corpus;
    citegraph::Json j;
    j["load_report"] = citegraph::to_json(c.report);
    j["summary"] = citegraph::to_json(citegraph::corpus_summary(c.papers, c.citations));
    deliver(out, {j.dump(2), {}});
  });
}

cg_status cg_corpus_write(const cg_corpus* corpus, const char* nodes_path, const char* edges_path) {
  return guarded([&] {
    const auto& c = deref(corpus, "corpus").corpus;
    citegraph::write_corpus(c, cstr(nodes_path, "nodes_path"), cstr(edges_path, "edges_path"));
  });
}

cg_status cg_graph_build(const cg_corpus* corpus, int32_t sampled_year, cg_graph** out) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    const auto& c = deref(corpus, "corpus").corpus;
    auto built = citegraph::build_graph(c.papers, c.citations, sampled_year);
    *out = new cg_graph{std::move(built.graph), built.report};
  });
}

cg_status cg_graph_from_edges(uint32_t sources, uint32_t targets, const uint32_t* edge_sources,
                              const uint32_t* edge_targets, size_t edge_count, cg_graph** out) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    if (edge_count && (!edge_sources || !edge_targets)) {
      citegraph::fail(citegraph::ErrorKind::InvalidArgument, "edge arrays are NULL");
    }
    std::vector<std::string> sids(sources);
    std::vector<std::string> tids(targets);
    for (uint32_t i = 0; i < sources; ++i) sids[i] = "s" + std::to_string(i);
    for (uint32_t j = 0; j < targets; ++j) tids[j] = "t" + std::to_string(j);
    std::vector<citegraph::Edge> edges(edge_count);
    for (size_t k = 0; k < edge_count; ++k) edges[k] = {edge_sources[k], edge_targets[k]};
    *out = new cg_graph{citegraph::CitationGraph::from_edges(std::move(sids), std::move(tids), edges), std::nullopt};
  });
}

void cg_graph_free(cg_graph* graph) { delete graph; }

cg_status cg_graph_counts_get(const cg_graph* graph, cg_graph_counts* out) {
  return guarded([&] {
    need_out(out);
    const auto& g = deref(graph, "graph").graph;
    *out = {g.source_count(), g.target_count(), g.edge_count()};
  });
}

cg_status cg_graph_build_report(const cg_graph* graph, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto& g = deref(graph, "graph");
    deliver(out, {g.report ? citegraph::to_json(*g.report).dump(2) : std::string("{}"), {}});
  });
}

cg_status cg_graph_source_degrees(const cg_graph* graph, uint32_t* buffer, size_t length) {
  return guarded([&] {
    const auto& g = deref(graph, "graph").graph;
    if (length != g.source_count() || (length && !buffer)) {
      citegraph::fail(citegraph::ErrorKind::InvalidArgument, "buffer length must equal the source count");
    }
    for (uint32_t s = 0; s < g.source_count(); ++s) buffer[s] = g.source_degree(s);
  });
}

cg_status cg_graph_target_degrees(const cg_graph* graph, uint32_t* buffer, size_t length) {
  return guarded([&] {
    const auto& g = deref(graph, "graph").graph;
    if (length != g.target_count() || (length && !buffer)) {
      citegraph::fail(citegraph::ErrorKind::InvalidArgument, "buffer length must equal the target count");
    }
    for (uint32_t t = 0; t < g.target_count(); ++t) buffer[t] = g.target_degree(t);
  });
}

cg_status cg_graph_lookup(const cg_graph* graph, const char* paper_id, int64_t* source_index,
                          int64_t* target_index) {
  return guarded([&] {
    need_out(source_index);
    need_out(target_index);
    const auto found = deref(graph, "graph").graph.lookup(cstr(paper_id, "paper_id"));
    *source_index = found.source ? static_cast<int64_t>(found.source->index) : -1;
    *target_index = found.target ? static_cast<int64_t>(found.target->index) : -1;
  });
}

cg_status cg_graph_save(const cg_graph* graph, const char* path) {
  return guarded([&] {
    const auto& g = deref(graph, "graph").graph;
    std::ofstream out(cstr(path, "path"), std::ios::binary | std::ios::trunc);
    if (!out) citegraph::fail(citegraph::ErrorKind::Io, std::string("cannot write '") + path + "'");
    citegraph::save_snapshot(g, out);
  });
}

cg_status cg_graph_load(const char* path, cg_graph** out) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    std::ifstream in(cstr(path, "path"), std::ios::binary);
    if (!in) citegraph::fail(citegraph::ErrorKind::Io, std::string("cannot open '") + path + "'");
    *out = new cg_graph{citegraph::load_snapshot(in), std::nullopt};
  });
}

cg_status cg_categories_from_corpus(const cg_corpus* corpus, const char* universe_path, cg_categories** out) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    const auto& c = deref(corpus, "corpus").corpus;
    std::optional<std::vector<std::string>> universe;
    if (universe_path) universe = citegraph::CategoryTable::read_universe(universe_path);
    *out = new cg_categories{citegraph::CategoryTable::from_papers(c.papers, std::move(universe))};
  });
}

void cg_categories_free(cg_categories* categories) { delete categories; }

const char* cg_result_json(const cg_result* result) { return result ? result->json.c_str() : nullptr; }

size_t cg_result_table_count(const cg_result* result) { return result ? result->tables.size() : 0; }

const char* cg_result_table_name(const cg_result* result, size_t index) {
  if (!result || index >= result->tables.size()) return nullptr;
  return result->tables[index].first.c_str();
}

const char* cg_result_table(const cg_result* result, const char* name) {
  if (!result || !name) return nullptr;
  for (const auto& [n, text] : result->tables) {
    if (n == name) return text.c_str();
  }
  return nullptr;
}

void cg_result_free(cg_result* result) { delete result; }

void cg_distance_params_init(cg_distance_params* params) {
  if (params) *params = {2000, 30, 0, 0};
}

cg_status cg_pairwise_distance(const cg_graph* graph, uint32_t source_a, uint32_t source_b, int* reachable,
                               uint32_t* distance) {
  return guarded([&] {
    need_out(reachable);
    need_out(distance);
    const auto d = citegraph::pairwise_distance(deref(graph, "graph").graph, source_a, source_b);
    *reachable = d.has_value() ? 1 : 0;
    if (d) *distance = *d;
  });
}

cg_status cg_distances(const cg_graph* graph, const cg_distance_params* params, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto s = citegraph::sampled_mean_distance(deref(graph, "graph").graph, distance_options(params));
    deliver(out, {citegraph::to_json(s).dump(2), {{"histogram", citegraph::histogram_csv(s)}}});
  });
}

cg_status cg_weighted_distances(const cg_graph* graph, const cg_distance_params* params, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto s = citegraph::weighted_distance_summary(deref(graph, "graph").graph, distance_options(params));
    deliver(out, {citegraph::to_json(s).dump(2), {{"histogram", citegraph::histogram_csv(s)}}});
  });
}

void cg_null_params_init(cg_null_params* params) {
  if (params) *params = {30, 2000, 10, 0, 0};
}

cg_status cg_randomize(const cg_graph* graph, uint32_t swap_multiplier, uint64_t seed, cg_graph** out,
                       uint64_t* accepted_swaps) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    auto r = citegraph::randomize_degree_preserving(deref(graph, "graph").graph, swap_multiplier, seed);
    if (accepted_swaps) *accepted_swaps = r.accepted_swaps;
    *out = new cg_graph{std::move(r.graph), std::nullopt};
  });
}

cg_status cg_null_network(const cg_graph* graph, const cg_null_params* params, uint32_t index, cg_graph** out,
                          uint64_t* accepted_swaps) {
  return guarded([&] {
    need_out(out);
    *out = nullptr;
    cg_null_params p;
    if (params) {
      p = *params;
    } else {
      cg_null_params_init(&p);
    }
    if (index >= p.networks) citegraph::fail(citegraph::ErrorKind::OutOfRange, "network index out of range");
    const auto seed = citegraph::derive_seed(p.master_seed, citegraph::StreamDomain::NullNetwork, index);
    auto r = citegraph::randomize_degree_preserving(deref(graph, "graph").graph, p.swap_multiplier, seed);
    if (accepted_swaps) *accepted_swaps = r.accepted_swaps;
    *out = new cg_graph{std::move(r.graph), std::nullopt};
  });
}

cg_status cg_null_baseline(const cg_graph* graph, const cg_null_params* params, cg_result** out) {
  return guarded([&] {
    need_out(out);
    cg_null_params p;
    if (params) {
      p = *params;
    } else {
      cg_null_params_init(&p);
    }
    citegraph::NullModelOptions o;
    o.networks = p.networks;
    o.sample_size = p.sample_size;
    o.swap_multiplier = p.swap_multiplier;
    o.master_seed = p.master_seed;
    o.workers = p.workers;
    const auto r = citegraph::null_distance_baseline(deref(graph, "graph").graph, o);
    deliver(out, {citegraph::to_json(r).dump(2), {{"networks", citegraph::null_networks_csv(r)}}});
  });
}

cg_status cg_edge_clustering(const cg_graph* graph, uint32_t source, uint32_t target, uint64_t* observed,
                             double* expected, int* defined, double* c) {
  return guarded([&] {
    need_out(observed);
    need_out(expected);
    need_out(defined);
    need_out(c);
    const auto r = citegraph::edge_clustering(deref(graph, "graph").graph, source, target);
    *observed = r.observed;
    *expected = r.expected;
    *defined = r.c.has_value() ? 1 : 0;
    if (r.c) *c = *r.c;
  });
}

cg_status cg_clustering(const cg_graph* graph, const cg_categories* categories, cg_edge_filter filter,
                        int emit_edges, uint32_t workers, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto& g = deref(graph, "graph").graph;
    citegraph::EdgeFilter f;
    switch (filter) {
      case CG_FILTER_ALL: f = citegraph::EdgeFilter::All; break;
      case CG_FILTER_SAME_CATEGORY: f = citegraph::EdgeFilter::SameCategory; break;
      case CG_FILTER_CROSS_CATEGORY: f = citegraph::EdgeFilter::CrossCategory; break;
      default: citegraph::fail(citegraph::ErrorKind::InvalidArgument, "unknown edge filter");
    }
    std::optional<citegraph::NodeCategories> nodes;
    if (categories) nodes = citegraph::categorize(g, categories->table);
    const auto d = citegraph::clustering_distribution(g, f, nodes ? &*nodes : nullptr, workers, emit_edges != 0);
    cg_result r{citegraph::to_json(d).dump(2), {}};
    if (emit_edges) r.tables.emplace_back("edges", citegraph::clustering_edges_csv(g, d));
    deliver(out, std::move(r));
  });
}

cg_status cg_gini(const uint32_t* degrees, size_t length, double* gini, uint64_t* excluded) {
  return guarded([&] {
    need_out(gini);
    if (length && !degrees) citegraph::fail(citegraph::ErrorKind::InvalidArgument, "degrees is NULL");
    const auto l = citegraph::lorenz_gini(std::span<const uint32_t>(degrees, length));
    *gini = l.gini;
    if (excluded) *excluded = l.excluded_degree_one;
  });
}

cg_status cg_top_share(const uint32_t* degrees, size_t length, double top_fraction, double* share) {
  return guarded([&] {
    need_out(share);
    if (length && !degrees) citegraph::fail(citegraph::ErrorKind::InvalidArgument, "degrees is NULL");
    *share = citegraph::top_share(std::span<const uint32_t>(degrees, length), top_fraction);
  });
}

cg_status cg_impact(const cg_graph* graph, const double* top_fractions, size_t fraction_count, cg_result** out) {
  return guarded([&] {
    need_out(out);
    if (fraction_count && !top_fractions) {
      citegraph::fail(citegraph::ErrorKind::InvalidArgument, "top_fractions is NULL");
    }
    const auto degrees = citegraph::degree_sequences(deref(graph, "graph").graph).target;
    const auto l = citegraph::lorenz_gini(degrees);
    citegraph::Json j;
    j["gini"] = l.gini;
    j["targets"] = degrees.size();
    j["retained_targets"] = l.n;
    j["excluded_degree_one"] = l.excluded_degree_one;
    citegraph::Json shares = citegraph::Json::array();
    for (size_t i = 0; i < fraction_count; ++i) {
      shares.push_back({{"top_fraction", top_fractions[i]},
                        {"share", citegraph::top_share(degrees, top_fractions[i])}});
    }
    j["top_shares"] = std::move(shares);
    deliver(out, {j.dump(2), {{"lorenz", citegraph::lorenz_csv(l)}}});
  });
}

cg_status cg_robustness(const cg_graph* graph, const double* fractions, size_t fraction_count,
                        const cg_distance_params* params, cg_result** out) {
  return guarded([&] {
    need_out(out);
    if (fraction_count && !fractions) citegraph::fail(citegraph::ErrorKind::InvalidArgument, "fractions is NULL");
    const auto curve = citegraph::removal_robustness(deref(graph, "graph").graph,
                                                     std::span<const double>(fractions, fraction_count),
                                                     distance_options(params));
    deliver(out, {citegraph::to_json(curve).dump(2), {{"curve", citegraph::robustness_csv(curve)}}});
  });
}

cg_status cg_hh_index(const double* shares, size_t length, int cross_only, size_t own_index, int* defined,
                      double* hh) {
  return guarded([&] {
    need_out(defined);
    need_out(hh);
    if (length && !shares) citegraph::fail(citegraph::ErrorKind::InvalidArgument, "shares is NULL");
    if (cross_only && own_index >= length) {
      citegraph::fail(citegraph::ErrorKind::OutOfRange, "own_index out of range");
    }
    const auto v = citegraph::hh_index(std::span<const double>(shares, length),
                                       cross_only ? citegraph::HhVariant::CrossOnly : citegraph::HhVariant::All,
                                       cross_only ? std::optional<std::size_t>(own_index) : std::nullopt);
    *defined = v.has_value() ? 1 : 0;
    if (v) *hh = *v;
  });
}

cg_status cg_fields(const cg_graph* graph, const cg_categories* categories, int include_unclassified,
                    cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto& g = deref(graph, "graph").graph;
    const auto& table = deref(categories, "categories").table;
    const auto matrix = citegraph::citation_matrix(g, table);
    const auto within = citegraph::within_field_share_distribution(matrix, include_unclassified != 0);
    const auto hh = citegraph::hh_table(matrix, include_unclassified != 0);
    std::vector<double> all;
    std::vector<double> cross;
    for (const auto& row : hh) {
      if (row.hh_all) all.push_back(*row.hh_all);
      if (row.hh_cross) cross.push_back(*row.hh_cross);
    }
    citegraph::Json j = citegraph::to_json(within);
    j["hh_all"] = citegraph::to_json(citegraph::box_stats(all));
    j["hh_cross"] = citegraph::to_json(citegraph::box_stats(cross));
    j["include_unclassified"] = include_unclassified != 0;
    j["categories_out_of_universe"] = table.out_of_universe_papers();
    deliver(out, {j.dump(2),
                  {{"matrix", citegraph::matrix_csv(matrix)},
                   {"hh", citegraph::hh_csv(hh)},
                   {"within", citegraph::within_share_csv(within)}}});
  });
}

cg_status cg_field_distances(const cg_graph* graph, const cg_categories* categories, uint32_t anchor_sample,
                             uint64_t master_seed, uint32_t workers, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto r = citegraph::category_distance_matrix(deref(graph, "graph").graph,
                                                       deref(categories, "categories").table, anchor_sample,
                                                       master_seed, workers);
    citegraph::Json j{{"anchors", r.anchors},
                      {"anchor_sample_requested", anchor_sample},
                      {"clamped", r.clamped},
                      {"master_seed", master_seed},
                      {"rows", r.matrix.row_labels.size()},
                      {"columns", r.matrix.col_labels.size()}};
    deliver(out, {j.dump(2), {{"matrix", citegraph::matrix_csv(r.matrix)}}});
  });
}

cg_status cg_pct_change(const char* early_matrix_csv, const char* late_matrix_csv, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto early = citegraph::parse_matrix_csv(cstr(early_matrix_csv, "early"), citegraph::CellKind::MeanDistance);
    const auto late = citegraph::parse_matrix_csv(cstr(late_matrix_csv, "late"), citegraph::CellKind::MeanDistance);
    const auto r = citegraph::pct_change_distribution(early, late);
    deliver(out, {citegraph::to_json(r).dump(2), {{"cdf", citegraph::pct_change_csv(r)}}});
  });
}

cg_status cg_synth(const char* config_json, const char* out_dir, uint32_t workers, cg_result** out) {
  return guarded([&] {
    need_out(out);
    const auto config = citegraph::parse_synth_config(cstr(config_json, "config_json"));
    const std::filesystem::path dir(cstr(out_dir, "out_dir"));
    citegraph::generate_series(config, dir, workers);
    std::ifstream in(dir / "synth_manifest.json", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    deliver(out, {ss.str(), {}});
  });
}

}  // extern "C"
