#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "citegraph/distance.hpp"
#include "citegraph/graph.hpp"

namespace citegraph {

struct LorenzResult {
  std::vector<std::pair<double, double>> points;  // (population share, citation share), from (0,0)
  double gini = 0.0;
  std::uint64_t excluded_degree_one = 0;          // degrees <= 1 dropped before the curve
  std::uint64_t n = 0;
};

// Targets with a single citation are left out; the rest are sorted ascending
// and G = 2 * sum(i * x_(i)) / (n * sum(x)) - (n + 1) / n.
LorenzResult lorenz_gini(std::span<const std::uint32_t> target_degrees);

// Share of all citations (after the degree-1 exclusion) held by the top
// top_fraction * n targets; a fractional last rank contributes pro rata.
double top_share(std::span<const std::uint32_t> target_degrees, double top_fraction);

// Targets ordered by degree descending, ties by paper id ascending.
std::vector<std::uint32_t> removal_order(const CitationGraph& graph);

// Number of targets removed for a fraction: ceil(fraction * T).
std::uint32_t removal_count(const CitationGraph& graph, double fraction);

struct RobustnessPoint {
  double fraction = 0.0;
  std::uint32_t removed_targets = 0;
  double mean_distance = 0.0;
  double sd = 0.0;
  double reachable_fraction = 0.0;
  double pct_increase = 0.0;
};

struct RobustnessCurve {
  std::vector<RobustnessPoint> points;  // first entry is the fraction-0 baseline
  std::uint32_t sample_size = 0;
  std::uint32_t repetitions = 0;
  std::uint64_t master_seed = 0;
};

// Every fraction reuses the same master seed, hence the same source samples.
RobustnessCurve removal_robustness(const CitationGraph& graph, std::span<const double> fractions,
                                   const DistanceOptions& options);

}  // namespace citegraph
