#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "citegraph/graph.hpp"

namespace citegraph {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct DistanceOptions {
  std::uint32_t sample_size = 2000;
  std::uint32_t repetitions = 30;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
  // Optional per-target removal mask (size T, nonzero = removed).
  std::span<const std::uint8_t> removed_targets;
};

struct HistogramBin {
  double distance = 0.0;
  std::uint64_t count = 0;
  double probability = 0.0;
};

// Distances are in halved units: one co-citation step is 1.
struct DistanceSummary {
  bool weighted = false;
  double mean_distance = std::numeric_limits<double>::quiet_NaN();  // pooled over reachable pairs
  double sd_across_repetitions = 0.0;
  double reachable_fraction = 0.0;
  std::vector<HistogramBin> histogram;
  std::vector<double> repetition_means;
  std::uint64_t pairs_per_repetition = 0;
  std::uint64_t reachable_pairs = 0;
  std::uint32_t repetitions = 0;
  std::uint32_t sample_size = 0;
  std::uint64_t master_seed = 0;
};

struct GaussianFit {
  double mu = 0.0;
  double sigma = 0.0;
  bool degenerate = false;  // fewer than two distinct distance values
};

// Halved BFS distance between two source nodes; nullopt when unreachable.
std::optional<std::uint32_t> pairwise_distance(const CitationGraph& graph, std::uint32_t source_a,
                                               std::uint32_t source_b);

// Halved distances from one source to every source (kUnreachable if none).
std::vector<std::uint32_t> source_distances(const CitationGraph& graph, std::uint32_t source,
                                            std::span<const std::uint8_t> removed_targets = {});

// Shortest paths over the implicit co-citation projection where sources
// sharing k references are joined by an edge of weight 1/k. Unreachable
// entries are +infinity.
std::vector<double> weighted_source_distances(const CitationGraph& graph, std::uint32_t source,
                                              std::span<const std::uint8_t> removed_targets = {});

DistanceSummary sampled_mean_distance(const CitationGraph& graph, const DistanceOptions& options);
DistanceSummary weighted_distance_summary(const CitationGraph& graph, const DistanceOptions& options);

GaussianFit fit_gaussian(std::span<const HistogramBin> histogram);

// Bit-parallel breadth-first search from up to 64 source roots at once over
// the bipartite graph. Buffers are owned per instance; one instance per worker.
class MultiSourceBfs {
 public:
  static constexpr std::size_t kWidth = 64;

  MultiSourceBfs(const CitationGraph& graph, std::span<const std::uint8_t> removed_targets = {})
      : graph_(&graph),
        removed_(removed_targets),
        seen_source_(graph.source_count(), 0),
        seen_target_(graph.target_count(), 0),
        next_target_(graph.target_count(), 0),
        next_source_(graph.source_count(), 0) {}

  // Calls visit(source, halved_level, bits) each time the roots in `bits`
  // (bit i = roots[i]) first reach `source`, for levels >= 1.
  template <class Visit>
  void run(std::span<const std::uint32_t> roots, Visit&& visit) {
    std::fill(seen_source_.begin(), seen_source_.end(), 0);
    std::fill(seen_target_.begin(), seen_target_.end(), 0);
    source_frontier_.clear();
    for (std::size_t i = 0; i < roots.size() && i < kWidth; ++i) {
      const auto bit = std::uint64_t{1} << i;
      if (seen_source_[roots[i]] == 0) source_frontier_.push_back({roots[i], 0});
      seen_source_[roots[i]] |= bit;
    }
    for (auto& [s, bits] : source_frontier_) bits = seen_source_[s];

    for (std::uint32_t level = 1; !source_frontier_.empty(); ++level) {
      touched_.clear();
      for (const auto& [s, bits] : source_frontier_) {
        for (auto t : graph_->targets_of(s)) {
          if (!removed_.empty() && removed_[t]) continue;
          const auto fresh = bits & ~seen_target_[t];
          if (!fresh) continue;
          if (!next_target_[t]) touched_.push_back(t);
          next_target_[t] |= fresh;
        }
      }
      target_frontier_.clear();
      for (auto t : touched_) {
        seen_target_[t] |= next_target_[t];
        target_frontier_.push_back({t, next_target_[t]});
        next_target_[t] = 0;
      }

      touched_.clear();
      for (const auto& [t, bits] : target_frontier_) {
        for (auto s : graph_->sources_of(t)) {
          const auto fresh = bits & ~seen_source_[s];
          if (!fresh) continue;
          if (!next_source_[s]) touched_.push_back(s);
          next_source_[s] |= fresh;
        }
      }
      source_frontier_.clear();
      for (auto s : touched_) {
        const auto fresh = next_source_[s];
        next_source_[s] = 0;
        seen_source_[s] |= fresh;
        source_frontier_.push_back({s, fresh});
        visit(s, level, fresh);
      }
    }
  }

 private:
  const CitationGraph* graph_;
  std::span<const std::uint8_t> removed_;
  std::vector<std::uint64_t> seen_source_;
  std::vector<std::uint64_t> seen_target_;
  std::vector<std::uint64_t> next_target_;
  std::vector<std::uint64_t> next_source_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> source_frontier_;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> target_frontier_;
};

}  // namespace citegraph
