#include "citegraph/distance.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include "citegraph/error.hpp"
#include "citegraph/parallel.hpp"
#include "citegraph/rng.hpp"

namespace citegraph {
namespace {

void check_source(const CitationGraph& graph, std::uint32_t s) {
  if (s >= graph.source_count()) {
    fail(ErrorKind::OutOfRange, "source index " + std::to_string(s) + " out of range (S=" +
                                    std::to_string(graph.source_count()) + ")");
  }
}

void check_mask(const CitationGraph& graph, std::span<const std::uint8_t> removed) {
  if (!removed.empty() && removed.size() != graph.target_count()) {
    fail(ErrorKind::InvalidArgument, "removal mask size does not match target count");
  }
}

void check_options(const CitationGraph& graph, const DistanceOptions& o) {
  if (o.sample_size < 2) fail(ErrorKind::InvalidArgument, "sample_size must be at least 2");
  if (o.sample_size > graph.source_count()) {
    fail(ErrorKind::InvalidArgument, "sample_size " + std::to_string(o.sample_size) +
                                         " exceeds source count " + std::to_string(graph.source_count()));
  }
  if (o.repetitions < 1) fail(ErrorKind::InvalidArgument, "repetitions must be at least 1");
  check_mask(graph, o.removed_targets);
}

std::vector<std::vector<std::uint32_t>> draw_samples(const CitationGraph& graph, const DistanceOptions& o) {
  std::vector<std::vector<std::uint32_t>> samples(o.repetitions);
  for (std::uint32_t r = 0; r < o.repetitions; ++r) {
    Rng rng(derive_seed(o.master_seed, StreamDomain::Repetition, r));
    samples[r] = sample_without_replacement(rng, graph.source_count(), o.sample_size);
  }
  return samples;
}

double sample_sd(std::span<const double> values) {
  std::vector<double> finite;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : finite) mean += v;
  mean /= static_cast<double>(finite.size());
  double ss = 0.0;
  for (double v : finite) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(finite.size() - 1));
}

// Dijkstra over the co-citation projection, expanding neighbours lazily via
// shared targets. If `wanted` is nonempty the search stops once `wanted_count`
// flagged sources are settled.
std::vector<double> weighted_search(const CitationGraph& graph, std::uint32_t root,
                                    std::span<const std::uint8_t> removed,
                                    std::span<const std::uint8_t> wanted, std::size_t wanted_count,
                                    std::vector<std::uint32_t>& shared, std::vector<std::uint32_t>& touched) {
  const auto S = graph.source_count();
  std::vector<double> dist(S, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> settled(S, 0);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[root] = 0.0;
  heap.push({0.0, root});
  std::size_t found = 0;
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (!wanted.empty() && wanted[u] && ++found == wanted_count) break;
    touched.clear();
    for (auto t : graph.targets_of(u)) {
      if (!removed.empty() && removed[t]) continue;
      for (auto v : graph.sources_of(t)) {
        if (v == u || settled[v]) continue;
        if (shared[v]++ == 0) touched.push_back(v);
      }
    }
    for (auto v : touched) {
      const double nd = d + 1.0 / static_cast<double>(shared[v]);
      shared[v] = 0;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

// Weighted histogram keys are distances rounded to 1e-9.
constexpr double kWeightedKeyScale = 1e9;

}  // namespace

std::vector<std::uint32_t> source_distances(const CitationGraph& graph, std::uint32_t source,
                                            std::span<const std::uint8_t> removed_targets) {
  check_source(graph, source);
  check_mask(graph, removed_targets);
  std::vector<std::uint32_t> dist(graph.source_count(), kUnreachable);
  std::vector<std::uint8_t> seen_target(graph.target_count(), 0);
  std::vector<std::uint32_t> frontier{source};
  std::vector<std::uint32_t> next;
  dist[source] = 0;
  for (std::uint32_t level = 1; !frontier.empty(); ++level) {
    next.clear();
    for (auto s : frontier) {
      for (auto t : graph.targets_of(s)) {
        if (seen_target[t] || (!removed_targets.empty() && removed_targets[t])) continue;
        seen_target[t] = 1;
        for (auto s2 : graph.sources_of(t)) {
          if (dist[s2] != kUnreachable) continue;
          dist[s2] = level;
          next.push_back(s2);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::optional<std::uint32_t> pairwise_distance(const CitationGraph& graph, std::uint32_t source_a,
                                               std::uint32_t source_b) {
  check_source(graph, source_a);
  check_source(graph, source_b);
  if (source_a == source_b) return 0;
  const auto dist = source_distances(graph, source_a);
  if (dist[source_b] == kUnreachable) return std::nullopt;
  return dist[source_b];
}

std::vector<double> weighted_source_distances(const CitationGraph& graph, std::uint32_t source,
                                              std::span<const std::uint8_t> removed_targets) {
  check_source(graph, source);
  check_mask(graph, removed_targets);
  std::vector<std::uint32_t> shared(graph.source_count(), 0);
  std::vector<std::uint32_t> touched;
  return weighted_search(graph, source, removed_targets, {}, 0, shared, touched);
}

DistanceSummary sampled_mean_distance(const CitationGraph& graph, const DistanceOptions& options) {
  check_options(graph, options);
  const auto samples = draw_samples(graph, options);
  const std::uint32_t n = options.sample_size;
  const std::size_t batches = (n + MultiSourceBfs::kWidth - 1) / MultiSourceBfs::kWidth;
  const std::size_t tasks = batches * options.repetitions;

  // hist[task][level] counts ordered (root, member) pairs.
  std::vector<std::vector<std::uint64_t>> task_hist(tasks);
  const unsigned workers = effective_workers(tasks, options.workers);
  struct WorkerState {
    std::optional<MultiSourceBfs> bfs;
    std::vector<std::uint8_t> in_sample;
    std::size_t rep = SIZE_MAX;
  };
  std::vector<WorkerState> state(workers);

  parallel_for(tasks, workers, [&](std::size_t task, unsigned w) {
    auto& ws = state[w];
    if (!ws.bfs) {
      ws.bfs.emplace(graph, options.removed_targets);
      ws.in_sample.assign(graph.source_count(), 0);
    }
    const std::size_t rep = task / batches;
    const std::size_t batch = task % batches;
    if (ws.rep != rep) {
      if (ws.rep != SIZE_MAX) {
        for (auto s : samples[ws.rep]) ws.in_sample[s] = 0;
      }
      for (auto s : samples[rep]) ws.in_sample[s] = 1;
      ws.rep = rep;
    }
    const auto& sample = samples[rep];
    const std::size_t first = batch * MultiSourceBfs::kWidth;
    const std::size_t count = std::min<std::size_t>(MultiSourceBfs::kWidth, n - first);
    auto& hist = task_hist[task];
    ws.bfs->run(std::span(sample).subspan(first, count), [&](std::uint32_t s, std::uint32_t level, std::uint64_t bits) {
      if (!ws.in_sample[s]) return;
      if (hist.size() <= level) hist.resize(level + 1, 0);
      hist[level] += static_cast<std::uint64_t>(std::popcount(bits));
    });
  });

  DistanceSummary out;
  out.repetitions = options.repetitions;
  out.sample_size = n;
  out.master_seed = options.master_seed;
  out.pairs_per_repetition = std::uint64_t{n} * (n - 1) / 2;

  std::vector<std::uint64_t> pooled;
  std::uint64_t pooled_sum = 0;
  for (std::uint32_t r = 0; r < options.repetitions; ++r) {
    std::vector<std::uint64_t> rep_hist;
    for (std::size_t b = 0; b < batches; ++b) {
      const auto& h = task_hist[r * batches + b];
      if (rep_hist.size() < h.size()) rep_hist.resize(h.size(), 0);
      for (std::size_t l = 0; l < h.size(); ++l) rep_hist[l] += h[l];
    }
    std::uint64_t rep_sum = 0;
    std::uint64_t rep_count = 0;
    for (std::size_t l = 0; l < rep_hist.size(); ++l) {
      // Source-to-source paths have even raw length, so every pair is seen
      // from both endpoints at the same halved level.
      if (rep_hist[l] % 2 != 0) throw std::logic_error("asymmetric pair count");
      rep_hist[l] /= 2;
      rep_sum += rep_hist[l] * l;
      rep_count += rep_hist[l];
    }
    if (pooled.size() < rep_hist.size()) pooled.resize(rep_hist.size(), 0);
    for (std::size_t l = 0; l < rep_hist.size(); ++l) pooled[l] += rep_hist[l];
    pooled_sum += rep_sum;
    out.reachable_pairs += rep_count;
    out.repetition_means.push_back(rep_count ? static_cast<double>(rep_sum) / static_cast<double>(rep_count)
                                             : std::numeric_limits<double>::quiet_NaN());
  }
  if (out.reachable_pairs) {
    out.mean_distance = static_cast<double>(pooled_sum) / static_cast<double>(out.reachable_pairs);
  }
  out.reachable_fraction = static_cast<double>(out.reachable_pairs) /
                           static_cast<double>(out.pairs_per_repetition * options.repetitions);
  out.sd_across_repetitions = sample_sd(out.repetition_means);
  for (std::size_t l = 1; l < pooled.size(); ++l) {
    if (!pooled[l]) continue;
    out.histogram.push_back({static_cast<double>(l), pooled[l],
                             static_cast<double>(pooled[l]) / static_cast<double>(out.reachable_pairs)});
  }
  return out;
}

DistanceSummary weighted_distance_summary(const CitationGraph& graph, const DistanceOptions& options) {
  check_options(graph, options);
  const auto samples = draw_samples(graph, options);
  const std::uint32_t n = options.sample_size;
  const std::size_t tasks = std::size_t{n} * options.repetitions;

  struct TaskResult {
    double sum = 0.0;
    std::uint64_t count = 0;
    std::map<std::int64_t, std::uint64_t> hist;
  };
  std::vector<TaskResult> results(tasks);
  const unsigned workers = effective_workers(tasks, options.workers);
  struct WorkerState {
    std::vector<std::uint32_t> shared;
    std::vector<std::uint32_t> touched;
    std::vector<std::uint8_t> wanted;
  };
  std::vector<WorkerState> state(workers);

  parallel_for(tasks, workers, [&](std::size_t task, unsigned w) {
    auto& ws = state[w];
    if (ws.shared.empty()) {
      ws.shared.assign(graph.source_count(), 0);
      ws.wanted.assign(graph.source_count(), 0);
    }
    const std::size_t rep = task / n;
    const std::size_t i = task % n;
    const auto& sample = samples[rep];
    if (i + 1 == n) return;
    for (std::size_t j = i + 1; j < n; ++j) ws.wanted[sample[j]] = 1;
    const auto dist = weighted_search(graph, sample[i], options.removed_targets, ws.wanted, n - 1 - i,
                                      ws.shared, ws.touched);
    auto& res = results[task];
    for (std::size_t j = i + 1; j < n; ++j) {
      ws.wanted[sample[j]] = 0;
      const double d = dist[sample[j]];
      if (!std::isfinite(d)) continue;
      res.sum += d;
      ++res.count;
      ++res.hist[std::llround(d * kWeightedKeyScale)];
    }
  });

  DistanceSummary out;
  out.weighted = true;
  out.repetitions = options.repetitions;
  out.sample_size = n;
  out.master_seed = options.master_seed;
  out.pairs_per_repetition = std::uint64_t{n} * (n - 1) / 2;
  std::map<std::int64_t, std::uint64_t> pooled;
  double pooled_sum = 0.0;
  for (std::uint32_t r = 0; r < options.repetitions; ++r) {
    double rep_sum = 0.0;
    std::uint64_t rep_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& res = results[r * n + i];
      rep_sum += res.sum;
      rep_count += res.count;
      for (const auto& [k, c] : res.hist) pooled[k] += c;
    }
    pooled_sum += rep_sum;
    out.reachable_pairs += rep_count;
    out.repetition_means.push_back(rep_count ? rep_sum / static_cast<double>(rep_count)
                                             : std::numeric_limits<double>::quiet_NaN());
  }
  if (out.reachable_pairs) out.mean_distance = pooled_sum / static_cast<double>(out.reachable_pairs);
  out.reachable_fraction = static_cast<double>(out.reachable_pairs) /
                           static_cast<double>(out.pairs_per_repetition * options.repetitions);
  out.sd_across_repetitions = sample_sd(out.repetition_means);
  for (const auto& [k, c] : pooled) {
    out.histogram.push_back({static_cast<double>(k) / kWeightedKeyScale, c,
                             static_cast<double>(c) / static_cast<double>(out.reachable_pairs)});
  }
  return out;
}

GaussianFit fit_gaussian(std::span<const HistogramBin> histogram) {
  if (histogram.empty()) fail(ErrorKind::EmptyDistribution, "cannot fit a normal curve to an empty histogram");
  double mass = 0.0;
  double first = 0.0;
  std::size_t distinct = 0;
  for (const auto& b : histogram) {
    if (b.probability <= 0.0) continue;
    mass += b.probability;
    first += b.probability * b.distance;
    ++distinct;
  }
  if (mass <= 0.0) fail(ErrorKind::EmptyDistribution, "histogram carries no probability mass");
  GaussianFit fit;
  fit.mu = first / mass;
  double second = 0.0;
  for (const auto& b : histogram) {
    if (b.probability <= 0.0) continue;
    second += b.probability * (b.distance - fit.mu) * (b.distance - fit.mu);
  }
  fit.sigma = std::sqrt(second / mass);
  fit.degenerate = distinct < 2 || fit.sigma <= 0.0;
  return fit;
}

}  // namespace citegraph
