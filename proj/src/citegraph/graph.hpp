#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citegraph/corpus.hpp"

namespace citegraph {

enum class Side : std::uint8_t { Source, Target };

// A node is identified by its side and dense index on that side. A paper that
// is both a sampled-year source and a cited work has two handles.
struct NodeHandle {
  Side side;
  std::uint32_t index;
  friend bool operator==(const NodeHandle&, const NodeHandle&) = default;
};

struct NodeLookup {
  std::optional<NodeHandle> source;
  std::optional<NodeHandle> target;
};

struct Edge {
  std::uint32_t source;
  std::uint32_t target;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable bipartite citation graph in CSR form with both directions.
class CitationGraph {
 public:
  CitationGraph() = default;
  // The id lookup tables view into the id vectors, so copies re-index.
  CitationGraph(const CitationGraph& other) { *this = other; }
  CitationGraph& operator=(const CitationGraph& other);
  CitationGraph(CitationGraph&&) noexcept = default;
  CitationGraph& operator=(CitationGraph&&) noexcept = default;

  // Edges must reference valid indices and be free of duplicates.
  static CitationGraph from_edges(std::vector<std::string> source_ids,
                                  std::vector<std::string> target_ids, std::span<const Edge> edges);

  std::uint32_t source_count() const noexcept { return static_cast<std::uint32_t>(source_ids_.size()); }
  std::uint32_t target_count() const noexcept { return static_cast<std::uint32_t>(target_ids_.size()); }
  std::uint64_t edge_count() const noexcept { return source_adj_.size(); }

  std::span<const std::uint32_t> targets_of(std::uint32_t source) const noexcept {
    return {source_adj_.data() + source_off_[source], source_adj_.data() + source_off_[source + 1]};
  }
  std::span<const std::uint32_t> sources_of(std::uint32_t target) const noexcept {
    return {target_adj_.data() + target_off_[target], target_adj_.data() + target_off_[target + 1]};
  }
  std::uint32_t source_degree(std::uint32_t s) const noexcept {
    return static_cast<std::uint32_t>(source_off_[s + 1] - source_off_[s]);
  }
  std::uint32_t target_degree(std::uint32_t t) const noexcept {
    return static_cast<std::uint32_t>(target_off_[t + 1] - target_off_[t]);
  }

  bool has_edge(std::uint32_t source, std::uint32_t target) const noexcept;

  const std::string& source_id(std::uint32_t s) const { return source_ids_.at(s); }
  const std::string& target_id(std::uint32_t t) const { return target_ids_.at(t); }
  const std::vector<std::string>& source_ids() const noexcept { return source_ids_; }
  const std::vector<std::string>& target_ids() const noexcept { return target_ids_; }

  NodeLookup lookup(std::string_view paper_id) const;

  // Source-major, ascending target order.
  std::vector<Edge> edges() const;

  friend bool operator==(const CitationGraph& a, const CitationGraph& b) {
    return a.source_ids_ == b.source_ids_ && a.target_ids_ == b.target_ids_ &&
           a.source_off_ == b.source_off_ && a.source_adj_ == b.source_adj_;
  }

 private:
  std::vector<std::string> source_ids_;
  std::vector<std::string> target_ids_;
  std::unordered_map<std::string_view, std::uint32_t> source_lookup_;
  std::unordered_map<std::string_view, std::uint32_t> target_lookup_;
  std::vector<std::uint64_t> source_off_{0};
  std::vector<std::uint32_t> source_adj_;
  std::vector<std::uint64_t> target_off_{0};
  std::vector<std::uint32_t> target_adj_;

  void index_ids();
};

struct BuildReport {
  int sampled_year = 0;
  std::uint64_t sources = 0;
  std::uint64_t targets = 0;
  std::uint64_t edges = 0;
  std::uint64_t zero_reference_sources = 0;   // sampled-year papers that cite nothing
  std::uint64_t other_year_citations = 0;     // ignored
  std::uint64_t unknown_source_citations = 0; // source has no PaperRecord; skipped
  std::uint64_t duplicated_sources = 0;       // sources also cited within the year
};

struct BuiltGraph {
  CitationGraph graph;
  BuildReport report;
};

// Sources are the papers of `sampled_year` with at least one reference, in
// order of their first citation row; targets are indexed in order of first
// appearance among the kept citation rows.
BuiltGraph build_graph(const std::vector<PaperRecord>& papers,
                       const std::vector<CitationRecord>& citations, int sampled_year);

struct DegreeSequences {
  std::vector<std::uint32_t> source;
  std::vector<std::uint32_t> target;
};

DegreeSequences degree_sequences(const CitationGraph& graph);

// Binary snapshot; layout documented in docs/snapshot_format.md.
void save_snapshot(const CitationGraph& graph, std::ostream& out);
CitationGraph load_snapshot(std::istream& in);

}  // namespace citegraph
