#include "citegraph/null_model.hpp"

#include <cmath>
#include <unordered_set>

#include "citegraph/error.hpp"
#include "citegraph/parallel.hpp"
#include "citegraph/rng.hpp"

namespace citegraph {
namespace {

constexpr std::uint64_t edge_key(std::uint32_t s, std::uint32_t t) noexcept {
  return (std::uint64_t{s} << 32) | t;
}

}  // namespace

RandomizedGraph randomize_degree_preserving(const CitationGraph& graph, std::uint32_t swap_multiplier,
                                            std::uint64_t seed) {
  const auto M = graph.edge_count();
  if (M < 2) fail(ErrorKind::InvalidArgument, "degree-preserving randomization needs at least 2 edges");

  auto edges = graph.edges();
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const auto& e : edges) present.insert(edge_key(e.source, e.target));

  RandomizedGraph out;
  out.attempted_swaps = std::uint64_t{swap_multiplier} * M;
  Rng rng(seed);
  for (std::uint64_t k = 0; k < out.attempted_swaps; ++k) {
    const auto i = rng.below(M);
    const auto j = rng.below(M);
    auto& a = edges[i];
    auto& b = edges[j];
    if (a.source == b.source || a.target == b.target) continue;
    const auto ab = edge_key(a.source, b.target);
    const auto ba = edge_key(b.source, a.target);
    if (present.contains(ab) || present.contains(ba)) continue;
    present.erase(edge_key(a.source, a.target));
    present.erase(edge_key(b.source, b.target));
    present.insert(ab);
    present.insert(ba);
    std::swap(a.target, b.target);
    ++out.accepted_swaps;
  }
  out.graph = CitationGraph::from_edges(graph.source_ids(), graph.target_ids(), edges);
  return out;
}

NullEnsembleResult null_distance_baseline(const CitationGraph& graph, const NullModelOptions& options) {
  if (options.networks < 1) fail(ErrorKind::InvalidArgument, "networks must be at least 1");
  NullEnsembleResult out;
  out.networks = options.networks;
  out.sample_size = options.sample_size;
  out.swap_multiplier = options.swap_multiplier;
  out.master_seed = options.master_seed;
  out.per_network_mean_distance.resize(options.networks);
  out.per_network_reachable_fraction.resize(options.networks);
  out.per_network_accepted_swaps.resize(options.networks);
  out.attempted_swaps_per_network = std::uint64_t{options.swap_multiplier} * graph.edge_count();

  // Surface sample-size errors before spending time on randomization.
  if (options.sample_size < 2 || options.sample_size > graph.source_count()) {
    DistanceOptions probe;
    probe.sample_size = options.sample_size;
    probe.repetitions = 1;
    sampled_mean_distance(graph, probe);
  }

  parallel_for(options.networks, options.workers, [&](std::size_t k, unsigned) {
    const auto randomized = randomize_degree_preserving(
        graph, options.swap_multiplier, derive_seed(options.master_seed, StreamDomain::NullNetwork, k));
    DistanceOptions d;
    d.sample_size = options.sample_size;
    d.repetitions = 1;
    d.master_seed = derive_seed(options.master_seed, StreamDomain::NullSample, k);
    d.workers = 1;
    const auto summary = sampled_mean_distance(randomized.graph, d);
    out.per_network_mean_distance[k] = summary.mean_distance;
    out.per_network_reachable_fraction[k] = summary.reachable_fraction;
    out.per_network_accepted_swaps[k] = randomized.accepted_swaps;
  });

  std::size_t finite = 0;
  double sum = 0.0;
  for (double m : out.per_network_mean_distance) {
    if (!std::isfinite(m)) continue;
    sum += m;
    ++finite;
  }
  out.ensemble_mean = finite ? sum / static_cast<double>(finite) : std::nan("");
  if (finite >= 2) {
    double ss = 0.0;
    for (double m : out.per_network_mean_distance) {
      if (std::isfinite(m)) ss += (m - out.ensemble_mean) * (m - out.ensemble_mean);
    }
    out.ensemble_sd = std::sqrt(ss / static_cast<double>(finite - 1));
  }
  return out;
}

}  // namespace citegraph
