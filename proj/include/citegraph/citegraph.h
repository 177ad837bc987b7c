/*
 * citegraph C API.
 *
 * All objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns a cg_status; on
 * failure cg_last_error() returns a one-line message for the calling thread
 * that stays valid until the next failing call on that thread.
 *
 * Analyses return a cg_result: a JSON document plus zero or more named CSV
 * tables. Schemas are documented in docs/formats.md.
 *
 * Handles are immutable once built and may be shared across threads.
 */
#ifndef CITEGRAPH_CITEGRAPH_H
#define CITEGRAPH_CITEGRAPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CITEGRAPH_BUILDING_LIBRARY)
#    define CG_API __declspec(dllexport)
#  else
#    define CG_API __declspec(dllimport)
#  endif
#else
#  define CG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_INVALID_ARGUMENT = 1,
  CG_ERR_OUT_OF_RANGE = 2,
  CG_ERR_IO = 3,
  CG_ERR_PARSE = 4,
  CG_ERR_CONFLICT = 5,
  CG_ERR_CONFIG = 6,
  CG_ERR_EMPTY_DISTRIBUTION = 7,
  CG_ERR_INTERNAL = 99
} cg_status;

typedef struct cg_corpus cg_corpus;
typedef struct cg_graph cg_graph;
typedef struct cg_categories cg_categories;
typedef struct cg_result cg_result;

CG_API const char* cg_version(void);
CG_API const char* cg_status_name(cg_status status);
CG_API const char* cg_last_error(void);

/* ---- corpus ------------------------------------------------------------ */

typedef struct cg_corpus_summary {
  uint64_t sources;
  uint64_t targets;
  uint64_t edges;
  double mean_references;
} cg_corpus_summary;

CG_API cg_status cg_corpus_load(const char* nodes_path, const char* edges_path, cg_corpus** out);
CG_API void cg_corpus_free(cg_corpus* corpus);
CG_API cg_status cg_corpus_summarize(const cg_corpus* corpus, cg_corpus_summary* out);
/* JSON: {"load_report": {...}, "summary": {...}} */
CG_API cg_status cg_corpus_report(const cg_corpus* corpus, cg_result** out);
CG_API cg_status cg_corpus_write(const cg_corpus* corpus, const char* nodes_path, const char* edges_path);

/* ---- graph ------------------------------------------------------------- */

typedef struct cg_graph_counts {
  uint64_t sources;
  uint64_t targets;
  uint64_t edges;
} cg_graph_counts;

CG_API cg_status cg_graph_build(const cg_corpus* corpus, int32_t sampled_year, cg_graph** out);
/* Graph from index pairs; node ids become "s<i>" and "t<j>". */
CG_API cg_status cg_graph_from_edges(uint32_t sources, uint32_t targets, const uint32_t* edge_sources,
                                     const uint32_t* edge_targets, size_t edge_count, cg_graph** out);
CG_API void cg_graph_free(cg_graph* graph);
CG_API cg_status cg_graph_counts_get(const cg_graph* graph, cg_graph_counts* out);
/* Build report JSON; empty object for graphs not built from a corpus. */
CG_API cg_status cg_graph_build_report(const cg_graph* graph, cg_result** out);
CG_API cg_status cg_graph_source_degrees(const cg_graph* graph, uint32_t* buffer, size_t length);
CG_API cg_status cg_graph_target_degrees(const cg_graph* graph, uint32_t* buffer, size_t length);
/* -1 when the paper has no node on that side. */
CG_API cg_status cg_graph_lookup(const cg_graph* graph, const char* paper_id, int64_t* source_index,
                                 int64_t* target_index);
CG_API cg_status cg_graph_save(const cg_graph* graph, const char* path);
CG_API cg_status cg_graph_load(const char* path, cg_graph** out);

/* ---- categories -------------------------------------------------------- */

/* universe_path may be NULL: the universe is then every label in the corpus. */
CG_API cg_status cg_categories_from_corpus(const cg_corpus* corpus, const char* universe_path,
                                           cg_categories** out);
CG_API void cg_categories_free(cg_categories* categories);

/* ---- results ----------------------------------------------------------- */

CG_API const char* cg_result_json(const cg_result* result);
CG_API size_t cg_result_table_count(const cg_result* result);
CG_API const char* cg_result_table_name(const cg_result* result, size_t index);
/* CSV text of a named table, or NULL if absent. */
CG_API const char* cg_result_table(const cg_result* result, const char* name);
CG_API void cg_result_free(cg_result* result);

/* ---- distances --------------------------------------------------------- */

typedef struct cg_distance_params {
  uint32_t sample_size;
  uint32_t repetitions;
  uint64_t master_seed;
  uint32_t workers; /* 0 = one per hardware thread */
} cg_distance_params;

/* sample_size 2000, repetitions 30, seed 0, workers 0 */
CG_API void cg_distance_params_init(cg_distance_params* params);

/* Halved distance; *reachable = 0 leaves *distance untouched. */
CG_API cg_status cg_pairwise_distance(const cg_graph* graph, uint32_t source_a, uint32_t source_b,
                                      int* reachable, uint32_t* distance);
/* Tables: "histogram". */
CG_API cg_status cg_distances(const cg_graph* graph, const cg_distance_params* params, cg_result** out);
CG_API cg_status cg_weighted_distances(const cg_graph* graph, const cg_distance_params* params,
                                       cg_result** out);

/* ---- null model -------------------------------------------------------- */

typedef struct cg_null_params {
  uint32_t networks;
  uint32_t sample_size;
  uint32_t swap_multiplier;
  uint64_t master_seed;
  uint32_t workers;
} cg_null_params;

/* networks 30, sample_size 2000, swap_multiplier 10, seed 0, workers 0 */
CG_API void cg_null_params_init(cg_null_params* params);
CG_API cg_status cg_randomize(const cg_graph* graph, uint32_t swap_multiplier, uint64_t seed, cg_graph** out,
                              uint64_t* accepted_swaps);
/* Network `index` of the ensemble cg_null_baseline would draw with the same params. */
CG_API cg_status cg_null_network(const cg_graph* graph, const cg_null_params* params, uint32_t index,
                                 cg_graph** out, uint64_t* accepted_swaps);
/* Tables: "networks". */
CG_API cg_status cg_null_baseline(const cg_graph* graph, const cg_null_params* params, cg_result** out);

/* ---- edge clustering --------------------------------------------------- */

typedef enum cg_edge_filter { CG_FILTER_ALL = 0, CG_FILTER_SAME_CATEGORY = 1, CG_FILTER_CROSS_CATEGORY = 2 } cg_edge_filter;

CG_API cg_status cg_edge_clustering(const cg_graph* graph, uint32_t source, uint32_t target, uint64_t* observed,
                                    double* expected, int* defined, double* c);
/* categories may be NULL for CG_FILTER_ALL. Tables: "edges" when emit_edges. */
CG_API cg_status cg_clustering(const cg_graph* graph, const cg_categories* categories, cg_edge_filter filter,
                               int emit_edges, uint32_t workers, cg_result** out);

/* ---- impact ------------------------------------------------------------ */

CG_API cg_status cg_gini(const uint32_t* degrees, size_t length, double* gini, uint64_t* excluded);
CG_API cg_status cg_top_share(const uint32_t* degrees, size_t length, double top_fraction, double* share);
/* Lorenz/Gini over target degrees plus top shares. Tables: "lorenz". */
CG_API cg_status cg_impact(const cg_graph* graph, const double* top_fractions, size_t fraction_count,
                           cg_result** out);
/* Tables: "curve" (baseline row first). */
CG_API cg_status cg_robustness(const cg_graph* graph, const double* fractions, size_t fraction_count,
                               const cg_distance_params* params, cg_result** out);

/* ---- field analytics --------------------------------------------------- */

CG_API cg_status cg_hh_index(const double* shares, size_t length, int cross_only, size_t own_index,
                             int* defined, double* hh);
/* Tables: "matrix", "hh", "within". */
CG_API cg_status cg_fields(const cg_graph* graph, const cg_categories* categories, int include_unclassified,
                           cg_result** out);
/* Tables: "matrix". */
CG_API cg_status cg_field_distances(const cg_graph* graph, const cg_categories* categories,
                                    uint32_t anchor_sample, uint64_t master_seed, uint32_t workers,
                                    cg_result** out);
/* Arguments are matrix CSV texts. Tables: "cdf". */
CG_API cg_status cg_pct_change(const char* early_matrix_csv, const char* late_matrix_csv, cg_result** out);

/* ---- synthetic corpora ------------------------------------------------- */

/* Writes epoch_<e>/{nodes,edges}.tsv and synth_manifest.json into out_dir. */
CG_API cg_status cg_synth(const char* config_json, const char* out_dir, uint32_t workers, cg_result** out);

#ifdef __cplusplus
}
#endif

#endif /* CITEGRAPH_CITEGRAPH_H */
