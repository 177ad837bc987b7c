#pragma once

#include <cstdint>
#include <vector>

#include "citegraph/distance.hpp"
#include "citegraph/graph.hpp"

namespace citegraph {

struct RandomizedGraph {
  CitationGraph graph;
  std::uint64_t attempted_swaps = 0;
  std::uint64_t accepted_swaps = 0;
};

// Double-edge-swap randomization: swap_multiplier * M attempts, each picking
// two edges (s1,t1),(s2,t2) and rewiring to (s1,t2),(s2,t1) unless that would
// duplicate an existing edge. Both degree sequences are preserved exactly and
// node indexing is unchanged.
RandomizedGraph randomize_degree_preserving(const CitationGraph& graph, std::uint32_t swap_multiplier,
                                            std::uint64_t seed);

struct NullModelOptions {
  std::uint32_t networks = 30;
  std::uint32_t sample_size = 2000;
  std::uint32_t swap_multiplier = 10;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
};

struct NullEnsembleResult {
  std::uint32_t networks = 0;
  std::uint32_t sample_size = 0;
  std::uint32_t swap_multiplier = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> per_network_mean_distance;
  std::vector<double> per_network_reachable_fraction;
  std::vector<std::uint64_t> per_network_accepted_swaps;
  std::uint64_t attempted_swaps_per_network = 0;
  double ensemble_mean = 0.0;
  double ensemble_sd = 0.0;
};

NullEnsembleResult null_distance_baseline(const CitationGraph& graph, const NullModelOptions& options);

}  // namespace citegraph
