#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "citegraph/fields.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/stats.hpp"

namespace citegraph {

// Edge clustering of a citation (s, t). With S' = N(t) \ {s} and
// T' = N(s) \ {t}:
//   observed = |{(s', t') in E : s' in S', t' in T'}|
//   expected = sum_{s' in S'} sum_{t' in T'} deg(s') deg(t') / M
//   C        = ln(observed / expected), undefined when observed == 0.
// C is a natural log.
struct EdgeClusteringRecord {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::uint64_t observed = 0;
  double expected = 0.0;
  std::optional<double> c;
};

EdgeClusteringRecord edge_clustering(const CitationGraph& graph, std::uint32_t source, std::uint32_t target);

enum class EdgeFilter { All, SameCategory, CrossCategory };
enum class CategoryRelation { Same, Cross, Unclassified };

const char* to_string(CategoryRelation relation) noexcept;

struct ClusteringDistribution {
  EdgeFilter filter = EdgeFilter::All;
  std::uint64_t edges = 0;  // edges passing the filter
  std::uint64_t defined = 0;
  std::uint64_t undefined = 0;
  double undefined_fraction = 0.0;
  BoxStats c_stats;  // over defined edges
  std::vector<EdgeClusteringRecord> records;          // filled when requested
  std::vector<CategoryRelation> relations;            // parallel to records, when categories given
};

// `categories` is required for the same/cross filters and optional for All.
// Edges with an unclassified endpoint pass only the All filter.
ClusteringDistribution clustering_distribution(const CitationGraph& graph, EdgeFilter filter,
                                               const NodeCategories* categories, unsigned workers = 0,
                                               bool keep_records = false);

}  // namespace citegraph
