#include "citegraph/impact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "citegraph/error.hpp"

namespace citegraph {
namespace {

std::vector<std::uint32_t> retained_degrees(std::span<const std::uint32_t> degrees, std::uint64_t& excluded) {
  std::vector<std::uint32_t> kept;
  kept.reserve(degrees.size());
  excluded = 0;
  for (auto d : degrees) {
    if (d <= 1) {
      ++excluded;
    } else {
      kept.push_back(d);
    }
  }
  if (kept.empty()) fail(ErrorKind::EmptyDistribution, "no target has more than one citation");
  return kept;
}

}  // namespace

LorenzResult lorenz_gini(std::span<const std::uint32_t> target_degrees) {
  if (target_degrees.empty()) fail(ErrorKind::EmptyDistribution, "empty degree list");
  LorenzResult out;
  auto x = retained_degrees(target_degrees, out.excluded_degree_one);
  std::sort(x.begin(), x.end());
  const std::uint64_t n = x.size();
  out.n = n;

  std::uint64_t total = 0;
  std::uint64_t weighted = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    total += x[i];
    weighted += (i + 1) * x[i];
  }
  const double nd = static_cast<double>(n);
  out.gini = 2.0 * static_cast<double>(weighted) / (nd * static_cast<double>(total)) - (nd + 1.0) / nd;
  if (out.gini < 0.0) out.gini = 0.0;  // rounding on exactly equal degrees

  out.points.reserve(n + 1);
  out.points.emplace_back(0.0, 0.0);
  std::uint64_t cum = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    cum += x[i];
    out.points.emplace_back(static_cast<double>(i + 1) / nd, static_cast<double>(cum) / static_cast<double>(total));
  }
  return out;
}

double top_share(std::span<const std::uint32_t> target_degrees, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction < 1.0)) {
    fail(ErrorKind::InvalidArgument, "top fraction must lie strictly between 0 and 1");
  }
  if (target_degrees.empty()) fail(ErrorKind::EmptyDistribution, "empty degree list");
  std::uint64_t excluded = 0;
  auto x = retained_degrees(target_degrees, excluded);
  std::sort(x.begin(), x.end(), std::greater<>());
  std::uint64_t total = 0;
  for (auto d : x) total += d;
  const double ranks = top_fraction * static_cast<double>(x.size());
  const auto whole = static_cast<std::size_t>(std::floor(ranks));
  std::uint64_t held = 0;
  for (std::size_t i = 0; i < whole && i < x.size(); ++i) held += x[i];
  double share = static_cast<double>(held);
  if (whole < x.size()) share += (ranks - static_cast<double>(whole)) * static_cast<double>(x[whole]);
  return share / static_cast<double>(total);
}

std::vector<std::uint32_t> removal_order(const CitationGraph& graph) {
  std::vector<std::uint32_t> order(graph.target_count());
  for (std::uint32_t t = 0; t < graph.target_count(); ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto da = graph.target_degree(a);
    const auto db = graph.target_degree(b);
    if (da != db) return da > db;
    return graph.target_id(a) < graph.target_id(b);
  });
  return order;
}

std::uint32_t removal_count(const CitationGraph& graph, double fraction) {
  const double raw = fraction * static_cast<double>(graph.target_count());
  // Guard against 0.05 * 200 evaluating to 10.000000000000002.
  const double rounded = std::round(raw);
  const double count = std::abs(raw - rounded) < 1e-9 ? rounded : std::ceil(raw);
  return static_cast<std::uint32_t>(std::min(count, static_cast<double>(graph.target_count())));
}

RobustnessCurve removal_robustness(const CitationGraph& graph, std::span<const double> fractions,
                                   const DistanceOptions& options) {
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] >= 0.0 && fractions[i] < 1.0)) {
      fail(ErrorKind::InvalidArgument, "removal fractions must lie in [0, 1)");
    }
    if (i > 0 && fractions[i] < fractions[i - 1]) {
      fail(ErrorKind::InvalidArgument, "removal fractions must be sorted ascending");
    }
  }
  RobustnessCurve curve;
  curve.sample_size = options.sample_size;
  curve.repetitions = options.repetitions;
  curve.master_seed = options.master_seed;

  DistanceOptions base = options;
  base.removed_targets = {};
  const auto baseline = sampled_mean_distance(graph, base);
  curve.points.push_back({0.0, 0, baseline.mean_distance, baseline.sd_across_repetitions,
                          baseline.reachable_fraction, 0.0});

  const auto order = removal_order(graph);
  std::vector<std::uint8_t> mask(graph.target_count(), 0);
  for (double f : fractions) {
    if (f == 0.0) continue;
    const auto count = removal_count(graph, f);
    std::fill(mask.begin(), mask.end(), 0);
    for (std::uint32_t i = 0; i < count; ++i) mask[order[i]] = 1;
    DistanceOptions opt = options;
    opt.removed_targets = mask;
    const auto s = sampled_mean_distance(graph, opt);
    RobustnessPoint p{f, count, s.mean_distance, s.sd_across_repetitions, s.reachable_fraction, 0.0};
    p.pct_increase = 100.0 * (s.mean_distance - baseline.mean_distance) / baseline.mean_distance;
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace citegraph
