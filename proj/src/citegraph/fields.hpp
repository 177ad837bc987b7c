#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citegraph/corpus.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/stats.hpp"

namespace citegraph {

inline constexpr std::string_view kUnclassified = "unclassified";
inline constexpr std::int32_t kNoCategory = -1;

// paper_id -> category labels; the first label in the universe is primary.
class CategoryTable {
 public:
  // Without a fixed universe, the universe is every label seen, sorted.
  static CategoryTable from_papers(const std::vector<PaperRecord>& papers,
                                   std::optional<std::vector<std::string>> universe = std::nullopt);
  // One label per line; blank lines and '#' comments skipped.
  static std::vector<std::string> read_universe(const std::filesystem::path& path);

  const std::vector<std::string>& universe() const noexcept { return universe_; }
  std::optional<std::uint32_t> primary(std::string_view paper_id) const;
  std::optional<std::uint32_t> label_index(std::string_view label) const;
  // Papers whose labels all fall outside a fixed universe.
  std::uint64_t out_of_universe_papers() const noexcept { return out_of_universe_; }
  std::uint64_t dropped_labels() const noexcept { return dropped_labels_; }

 private:
  std::vector<std::string> universe_;
  std::unordered_map<std::string, std::uint32_t> label_index_;
  std::unordered_map<std::string, std::uint32_t> primary_;
  std::uint64_t out_of_universe_ = 0;
  std::uint64_t dropped_labels_ = 0;
};

// Primary category per node, kNoCategory when unclassified.
struct NodeCategories {
  std::vector<std::int32_t> source;
  std::vector<std::int32_t> target;
};

NodeCategories categorize(const CitationGraph& graph, const CategoryTable& table);

enum class CellKind { CitationShare, MeanDistance };

// Row-major labeled matrix. Empty cells are NaN.
struct FieldMatrix {
  CellKind kind = CellKind::CitationShare;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<double> cells;
  std::vector<std::uint64_t> counts;  // citations (share) or pairs (distance) per cell

  double at(std::size_t r, std::size_t c) const { return cells[r * col_labels.size() + c]; }
  std::uint64_t count_at(std::size_t r, std::size_t c) const { return counts[r * col_labels.size() + c]; }
};

// cell(i,j) = 100 * citations(i -> j) / citations(i -> *). Rows are source
// categories with at least one citation; columns are the whole universe. An
// "unclassified" row/column is appended when any endpoint lacks a category.
FieldMatrix citation_matrix(const CitationGraph& graph, const CategoryTable& table);

struct WithinShareSummary {
  std::vector<std::string> labels;
  std::vector<double> shares;  // percent
  BoxStats stats;
};

WithinShareSummary within_field_share_distribution(const FieldMatrix& matrix,
                                                   bool include_unclassified = false);

enum class HhVariant { All, CrossOnly };

// Sum of squared normalized shares. CrossOnly drops `own` and renormalizes.
// nullopt when no mass remains.
std::optional<double> hh_index(std::span<const double> shares, HhVariant variant,
                               std::optional<std::size_t> own = std::nullopt);

struct HhRow {
  std::string category;
  std::optional<double> hh_all;
  std::optional<double> hh_cross;
  std::uint64_t n_citations = 0;
};

// One row per source category of a citation-share matrix. Unless
// include_unclassified is set, the unclassified row is skipped and the
// unclassified column is left out of the share vector before normalizing.
std::vector<HhRow> hh_table(const FieldMatrix& matrix, bool include_unclassified = false);

struct CategoryDistanceResult {
  FieldMatrix matrix;
  std::uint32_t anchors = 0;
  bool clamped = false;
};

// Rows: categories of all source papers; columns: categories of a uniform
// anchor sample. Cell = mean halved distance over reachable (source, anchor)
// pairs with source != anchor.
CategoryDistanceResult category_distance_matrix(const CitationGraph& graph, const CategoryTable& table,
                                                std::uint32_t anchor_sample, std::uint64_t master_seed,
                                                unsigned workers = 0);

struct PctChangeResult {
  std::vector<double> changes;                    // sorted ascending, percent
  std::vector<std::pair<double, double>> cdf;     // (change, cumulative fraction)
  double fraction_increased = 0.0;
  std::uint64_t cells = 0;
  std::uint64_t skipped_cells = 0;                // early cell zero or empty, or late empty
  std::vector<std::string> dropped_labels;        // present in only one matrix
};

PctChangeResult pct_change_distribution(const FieldMatrix& early, const FieldMatrix& late);

}  // namespace citegraph
