#include "citegraph/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "citegraph/error.hpp"

namespace citegraph {

CitationGraph& CitationGraph::operator=(const CitationGraph& other) {
  if (this == &other) return *this;
  source_ids_ = other.source_ids_;
  target_ids_ = other.target_ids_;
  source_off_ = other.source_off_;
  source_adj_ = other.source_adj_;
  target_off_ = other.target_off_;
  target_adj_ = other.target_adj_;
  index_ids();
  return *this;
}

void CitationGraph::index_ids() {
  source_lookup_.clear();
  target_lookup_.clear();
  source_lookup_.reserve(source_ids_.size());
  target_lookup_.reserve(target_ids_.size());
  for (std::uint32_t i = 0; i < source_ids_.size(); ++i) {
    if (!source_lookup_.emplace(source_ids_[i], i).second) {
      fail(ErrorKind::InvalidArgument, "duplicate source id '" + source_ids_[i] + "'");
    }
  }
  for (std::uint32_t i = 0; i < target_ids_.size(); ++i) {
    if (!target_lookup_.emplace(target_ids_[i], i).second) {
      fail(ErrorKind::InvalidArgument, "duplicate target id '" + target_ids_[i] + "'");
    }
  }
}

CitationGraph CitationGraph::from_edges(std::vector<std::string> source_ids,
                                        std::vector<std::string> target_ids,
                                        std::span<const Edge> edges) {
  CitationGraph g;
  g.source_ids_ = std::move(source_ids);
  g.target_ids_ = std::move(target_ids);
  const std::size_t S = g.source_ids_.size();
  const std::size_t T = g.target_ids_.size();
  if (S > UINT32_MAX || T > UINT32_MAX) fail(ErrorKind::OutOfRange, "node count exceeds 32-bit index space");

  g.source_off_.assign(S + 1, 0);
  g.target_off_.assign(T + 1, 0);
  for (const auto& e : edges) {
    if (e.source >= S || e.target >= T) {
      fail(ErrorKind::OutOfRange, "edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                                     ") references a missing node");
    }
    ++g.source_off_[e.source + 1];
    ++g.target_off_[e.target + 1];
  }
  for (std::size_t i = 0; i < S; ++i) g.source_off_[i + 1] += g.source_off_[i];
  for (std::size_t i = 0; i < T; ++i) g.target_off_[i + 1] += g.target_off_[i];

  g.source_adj_.resize(edges.size());
  g.target_adj_.resize(edges.size());
  {
    std::vector<std::uint64_t> cursor(g.source_off_.begin(), g.source_off_.end() - 1);
    for (const auto& e : edges) g.source_adj_[cursor[e.source]++] = e.target;
  }
  for (std::size_t s = 0; s < S; ++s) {
    auto first = g.source_adj_.begin() + static_cast<std::ptrdiff_t>(g.source_off_[s]);
    auto last = g.source_adj_.begin() + static_cast<std::ptrdiff_t>(g.source_off_[s + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      fail(ErrorKind::InvalidArgument, "duplicate edge from source '" + g.source_ids_[s] + "'");
    }
  }
  // Filling the reverse side in source order leaves each list sorted.
  {
    std::vector<std::uint64_t> cursor(g.target_off_.begin(), g.target_off_.end() - 1);
    for (std::uint32_t s = 0; s < S; ++s) {
      for (auto t : g.targets_of(s)) g.target_adj_[cursor[t]++] = s;
    }
  }
  g.index_ids();
  return g;
}

bool CitationGraph::has_edge(std::uint32_t source, std::uint32_t target) const noexcept {
  if (source >= source_count()) return false;
  const auto adj = targets_of(source);
  return std::binary_search(adj.begin(), adj.end(), target);
}

NodeLookup CitationGraph::lookup(std::string_view paper_id) const {
  NodeLookup out;
  if (auto it = source_lookup_.find(paper_id); it != source_lookup_.end()) {
    out.source = NodeHandle{Side::Source, it->second};
  }
  if (auto it = target_lookup_.find(paper_id); it != target_lookup_.end()) {
    out.target = NodeHandle{Side::Target, it->second};
  }
  return out;
}

std::vector<Edge> CitationGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::uint32_t s = 0; s < source_count(); ++s) {
    for (auto t : targets_of(s)) out.push_back({s, t});
  }
  return out;
}

BuiltGraph build_graph(const std::vector<PaperRecord>& papers,
                       const std::vector<CitationRecord>& citations, int sampled_year) {
  BuiltGraph built;
  auto& report = built.report;
  report.sampled_year = sampled_year;

  std::unordered_map<std::string_view, int> year_of;
  year_of.reserve(papers.size());
  std::uint64_t in_year_papers = 0;
  for (const auto& p : papers) {
    year_of.emplace(p.paper_id, p.year);
    if (p.year == sampled_year) ++in_year_papers;
  }

  std::vector<std::string> source_ids;
  std::vector<std::string> target_ids;
  std::unordered_map<std::string_view, std::uint32_t> source_index;
  std::unordered_map<std::string_view, std::uint32_t> target_index;
  std::vector<std::pair<std::string_view, std::string_view>> kept;
  for (const auto& c : citations) {
    const auto it = year_of.find(c.source_id);
    if (it == year_of.end()) {
      ++report.unknown_source_citations;
      continue;
    }
    if (it->second != sampled_year) {
      ++report.other_year_citations;
      continue;
    }
    kept.emplace_back(c.source_id, c.target_id);
  }
  // Two passes so both index maps can key on strings owned by `citations`.
  for (const auto& [src, tgt] : kept) {
    if (source_index.try_emplace(src, static_cast<std::uint32_t>(source_ids.size())).second) {
      source_ids.emplace_back(src);
    }
    if (target_index.try_emplace(tgt, static_cast<std::uint32_t>(target_ids.size())).second) {
      target_ids.emplace_back(tgt);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(kept.size());
  for (const auto& [src, tgt] : kept) edges.push_back({source_index.at(src), target_index.at(tgt)});

  for (const auto& id : target_ids) {
    if (source_index.contains(id)) ++report.duplicated_sources;
  }
  report.zero_reference_sources = in_year_papers - source_ids.size();

  built.graph = CitationGraph::from_edges(std::move(source_ids), std::move(target_ids), edges);
  report.sources = built.graph.source_count();
  report.targets = built.graph.target_count();
  report.edges = built.graph.edge_count();
  return built;
}

DegreeSequences degree_sequences(const CitationGraph& graph) {
  DegreeSequences d;
  d.source.resize(graph.source_count());
  d.target.resize(graph.target_count());
  for (std::uint32_t s = 0; s < graph.source_count(); ++s) d.source[s] = graph.source_degree(s);
  for (std::uint32_t t = 0; t < graph.target_count(); ++t) d.target[t] = graph.target_degree(t);
  return d;
}

}  // namespace citegraph
