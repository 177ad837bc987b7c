#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace citegraph {

struct PaperRecord {
  std::string paper_id;
  int year = 0;
  std::vector<std::string> categories;  // first label is the primary category

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct CitationRecord {
  std::string source_id;
  std::string target_id;

  friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
};

struct LoadReport {
  std::uint64_t node_rows = 0;
  std::uint64_t edge_rows = 0;
  std::uint64_t repeated_paper_rows = 0;  // identical repeats, collapsed
  std::uint64_t repeated_category_labels = 0;
  std::uint64_t duplicate_citations = 0;
  std::uint64_t self_citations = 0;
  std::uint64_t distinct_categories = 0;

  friend bool operator==(const LoadReport&, const LoadReport&) = default;
};

struct Corpus {
  std::vector<PaperRecord> papers;
  std::vector<CitationRecord> citations;
  LoadReport report;
};

struct CorpusSummary {
  std::uint64_t sources = 0;
  std::uint64_t targets = 0;
  std::uint64_t edges = 0;
  double mean_references = 0.0;
};

// Reads nodes.tsv (paper_id, year, '|'-separated categories) and edges.tsv
// (source_id, target_id). Each file may start with a single '#' header line.
// Throws Error{Parse} naming file and line on malformed rows and
// Error{Conflict} when a paper_id repeats with different metadata.
Corpus load_corpus(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path);

Corpus parse_corpus(std::istream& nodes, std::string_view nodes_name, std::istream& edges,
                    std::string_view edges_name);

void write_nodes(std::ostream& out, const std::vector<PaperRecord>& papers);
void write_edges(std::ostream& out, const std::vector<CitationRecord>& citations);
void write_corpus(const Corpus& corpus, const std::filesystem::path& nodes_path,
                  const std::filesystem::path& edges_path);

CorpusSummary corpus_summary(const std::vector<PaperRecord>& papers,
                             const std::vector<CitationRecord>& citations);

}  // namespace citegraph
