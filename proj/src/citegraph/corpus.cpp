#include "citegraph/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "citegraph/error.hpp"

namespace citegraph {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::OutOfRange: return "out_of_range";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Conflict: return "conflict";
    case ErrorKind::Config: return "config";
    case ErrorKind::EmptyDistribution: return "empty_distribution";
  }
  return "unknown";
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void parse_error(std::string_view file, std::uint64_t line, const std::string& msg) {
  fail(ErrorKind::Parse, std::string(file) + ":" + std::to_string(line) + ": " + msg);
}

// Calls fn(fields, line_number) for every data line. Strips a trailing '\r',
// skips blank lines and a leading '#' header.
template <class Fn>
void for_each_row(std::istream& in, std::string_view name, Fn&& fn) {
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.front() == '#') continue;
    fn(split(line, '\t'), line_no);
  }
  if (in.bad()) fail(ErrorKind::Io, "read failure on " + std::string(name));
}

}  // namespace

Corpus parse_corpus(std::istream& nodes, std::string_view nodes_name, std::istream& edges,
                    std::string_view edges_name) {
  Corpus corpus;
  auto& report = corpus.report;

  std::unordered_map<std::string, std::size_t> paper_index;
  std::set<std::string> labels;
  for_each_row(nodes, nodes_name, [&](const std::vector<std::string_view>& f, std::uint64_t line) {
    ++report.node_rows;
    if (f.size() != 3) {
      parse_error(nodes_name, line, "expected 3 tab-separated columns, found " + std::to_string(f.size()));
    }
    if (f[0].empty()) parse_error(nodes_name, line, "empty paper_id");
    PaperRecord rec;
    rec.paper_id = std::string(f[0]);
    const auto* first = f[1].data();
    const auto* last = first + f[1].size();
    const auto [ptr, ec] = std::from_chars(first, last, rec.year);
    if (ec != std::errc{} || ptr != last || f[1].empty()) {
      parse_error(nodes_name, line, "invalid year '" + std::string(f[1]) + "'");
    }
    if (!f[2].empty()) {
      for (auto label : split(f[2], '|')) {
        if (label.empty()) parse_error(nodes_name, line, "empty category label");
        std::string l(label);
        if (std::find(rec.categories.begin(), rec.categories.end(), l) != rec.categories.end()) {
          ++report.repeated_category_labels;
          continue;
        }
        rec.categories.push_back(std::move(l));
      }
    }
    const auto [it, inserted] = paper_index.try_emplace(rec.paper_id, corpus.papers.size());
    if (!inserted) {
      if (corpus.papers[it->second] != rec) {
        fail(ErrorKind::Conflict, std::string(nodes_name) + ":" + std::to_string(line) +
                                      ": paper_id '" + rec.paper_id +
                                      "' repeats with conflicting metadata");
      }
      ++report.repeated_paper_rows;
      return;
    }
    labels.insert(rec.categories.begin(), rec.categories.end());
    corpus.papers.push_back(std::move(rec));
  });
  report.distinct_categories = labels.size();

  std::unordered_set<std::string> seen;
  for_each_row(edges, edges_name, [&](const std::vector<std::string_view>& f, std::uint64_t line) {
    ++report.edge_rows;
    if (f.size() != 2) {
      parse_error(edges_name, line, "expected 2 tab-separated columns, found " + std::to_string(f.size()));
    }
    if (f[0].empty() || f[1].empty()) parse_error(edges_name, line, "empty paper_id");
    if (f[0] == f[1]) {
      ++report.self_citations;
      return;
    }
    std::string key;
    key.reserve(f[0].size() + f[1].size() + 1);
    key.append(f[0]).push_back('\t');
    key.append(f[1]);
    if (!seen.insert(std::move(key)).second) {
      ++report.duplicate_citations;
      return;
    }
    corpus.citations.push_back({std::string(f[0]), std::string(f[1])});
  });
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path) {
  std::ifstream nodes(nodes_path, std::ios::binary);
  if (!nodes) fail(ErrorKind::Io, "cannot open nodes file '" + nodes_path.string() + "'");
  std::ifstream edges(edges_path, std::ios::binary);
  if (!edges) fail(ErrorKind::Io, "cannot open edges file '" + edges_path.string() + "'");
  return parse_corpus(nodes, nodes_path.string(), edges, edges_path.string());
}

void write_nodes(std::ostream& out, const std::vector<PaperRecord>& papers) {
  out << "# paper_id\tyear\tcategories\n";
  for (const auto& p : papers) {
    out << p.paper_id << '\t' << p.year << '\t';
    for (std::size_t i = 0; i < p.categories.size(); ++i) {
      if (i) out << '|';
      out << p.categories[i];
    }
    out << '\n';
  }
}

void write_edges(std::ostream& out, const std::vector<CitationRecord>& citations) {
  out << "# source_id\ttarget_id\n";
  for (const auto& c : citations) out << c.source_id << '\t' << c.target_id << '\n';
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& nodes_path,
                  const std::filesystem::path& edges_path) {
  std::ofstream nodes(nodes_path, std::ios::binary | std::ios::trunc);
  if (!nodes) fail(ErrorKind::Io, "cannot write '" + nodes_path.string() + "'");
  write_nodes(nodes, corpus.papers);
  std::ofstream edges(edges_path, std::ios::binary | std::ios::trunc);
  if (!edges) fail(ErrorKind::Io, "cannot write '" + edges_path.string() + "'");
  write_edges(edges, corpus.citations);
  if (!nodes.flush() || !edges.flush()) fail(ErrorKind::Io, "write failure");
}

CorpusSummary corpus_summary(const std::vector<PaperRecord>& /*papers*/,
                             const std::vector<CitationRecord>& citations) {
  CorpusSummary s;
  std::unordered_set<std::string_view> sources;
  std::unordered_set<std::string_view> targets;
  for (const auto& c : citations) {
    sources.insert(c.source_id);
    targets.insert(c.target_id);
  }
  s.sources = sources.size();
  s.targets = targets.size();
  s.edges = citations.size();
  s.mean_references = s.sources == 0 ? 0.0 : static_cast<double>(s.edges) / static_cast<double>(s.sources);
  return s;
}

}  // namespace citegraph
