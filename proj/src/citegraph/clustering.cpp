#include "citegraph/clustering.hpp"

#include <algorithm>
#include <cmath>

#include "citegraph/error.hpp"
#include "citegraph/parallel.hpp"

namespace citegraph {

const char* to_string(CategoryRelation relation) noexcept {
  switch (relation) {
    case CategoryRelation::Same: return "same";
    case CategoryRelation::Cross: return "cross";
    case CategoryRelation::Unclassified: return "unclassified";
  }
  return "unknown";
}

namespace {

// Sum of neighbour degrees on both sides; the expected count factorizes.
double expected_count(const CitationGraph& g, std::uint32_t s, std::uint32_t t) {
  std::uint64_t source_mass = 0;
  for (auto s2 : g.sources_of(t)) {
    if (s2 != s) source_mass += g.source_degree(s2);
  }
  std::uint64_t target_mass = 0;
  for (auto t2 : g.targets_of(s)) {
    if (t2 != t) target_mass += g.target_degree(t2);
  }
  return static_cast<double>(source_mass) * static_cast<double>(target_mass) /
         static_cast<double>(g.edge_count());
}

EdgeClusteringRecord finish(std::uint32_t s, std::uint32_t t, std::uint64_t observed, double expected) {
  EdgeClusteringRecord r{s, t, observed, expected, std::nullopt};
  if (observed > 0) r.c = std::log(static_cast<double>(observed) / expected);
  return r;
}

}  // namespace

EdgeClusteringRecord edge_clustering(const CitationGraph& graph, std::uint32_t source, std::uint32_t target) {
  if (!graph.has_edge(source, target)) {
    fail(ErrorKind::InvalidArgument, "edge (" + std::to_string(source) + "," + std::to_string(target) +
                                         ") is not in the graph");
  }
  const auto own = graph.targets_of(source);
  std::uint64_t observed = 0;
  for (auto s2 : graph.sources_of(target)) {
    if (s2 == source) continue;
    const auto other = graph.targets_of(s2);
    // Sorted-list intersection of N(s2) with N(source) \ {target}.
    auto a = own.begin();
    auto b = other.begin();
    while (a != own.end() && b != other.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        if (*a != target) ++observed;
        ++a;
        ++b;
      }
    }
  }
  return finish(source, target, observed, expected_count(graph, source, target));
}

ClusteringDistribution clustering_distribution(const CitationGraph& graph, EdgeFilter filter,
                                               const NodeCategories* categories, unsigned workers,
                                               bool keep_records) {
  if (filter != EdgeFilter::All && categories == nullptr) {
    fail(ErrorKind::Config, "same/cross-category clustering needs a category table");
  }
  if (categories && (categories->source.size() != graph.source_count() ||
                     categories->target.size() != graph.target_count())) {
    fail(ErrorKind::InvalidArgument, "category assignment does not match the graph");
  }

  auto relation_of = [&](std::uint32_t s, std::uint32_t t) {
    const auto a = categories->source[s];
    const auto b = categories->target[t];
    if (a == kNoCategory || b == kNoCategory) return CategoryRelation::Unclassified;
    return a == b ? CategoryRelation::Same : CategoryRelation::Cross;
  };
  auto passes = [&](std::uint32_t s, std::uint32_t t) {
    if (filter == EdgeFilter::All) return true;
    const auto rel = relation_of(s, t);
    return filter == EdgeFilter::SameCategory ? rel == CategoryRelation::Same : rel == CategoryRelation::Cross;
  };

  const auto M = graph.edge_count();
  std::vector<EdgeClusteringRecord> all(M);
  std::vector<std::uint8_t> selected(M, 0);
  std::vector<std::uint64_t> offset(graph.source_count() + 1, 0);
  for (std::uint32_t s = 0; s < graph.source_count(); ++s) offset[s + 1] = offset[s] + graph.source_degree(s);

  workers = effective_workers(graph.source_count(), workers);
  std::vector<std::vector<std::uint8_t>> marks(workers);
  parallel_for(graph.source_count(), workers, [&](std::size_t si, unsigned w) {
    const auto s = static_cast<std::uint32_t>(si);
    auto& mark = marks[w];
    if (mark.empty()) mark.assign(graph.target_count(), 0);
    const auto own = graph.targets_of(s);
    for (auto t : own) mark[t] = 1;
    for (std::size_t k = 0; k < own.size(); ++k) {
      const auto t = own[k];
      const auto idx = offset[s] + k;
      if (!passes(s, t)) continue;
      selected[idx] = 1;
      mark[t] = 0;
      std::uint64_t observed = 0;
      for (auto s2 : graph.sources_of(t)) {
        if (s2 == s) continue;
        for (auto t2 : graph.targets_of(s2)) observed += mark[t2];
      }
      mark[t] = 1;
      all[idx] = finish(s, t, observed, expected_count(graph, s, t));
    }
    for (auto t : own) mark[t] = 0;
  });

  ClusteringDistribution out;
  out.filter = filter;
  std::vector<double> values;
  for (std::uint64_t i = 0; i < M; ++i) {
    if (!selected[i]) continue;
    ++out.edges;
    const auto& r = all[i];
    if (r.c) {
      ++out.defined;
      values.push_back(*r.c);
    } else {
      ++out.undefined;
    }
    if (keep_records) {
      out.records.push_back(r);
      if (categories) out.relations.push_back(relation_of(r.source, r.target));
    }
  }
  out.undefined_fraction = out.edges ? static_cast<double>(out.undefined) / static_cast<double>(out.edges) : 0.0;
  out.c_stats = box_stats(std::move(values));
  return out;
}

}  // namespace citegraph
