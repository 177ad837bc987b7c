#pragma once

// Portable random streams. std::mt19937_64 is fully specified by the
// standard, but the std:: distributions are not, so bounded integers, reals
// and Poisson draws are implemented here to keep outputs identical across
// standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace citegraph {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream splitting rule: seed_k = splitmix64(master ^ splitmix64(k + domain)).
// Different domains keep e.g. repetition streams and network streams apart.
enum class StreamDomain : std::uint64_t {
  Repetition = 0x01,
  NullNetwork = 0x02,
  NullSample = 0x03,
  AnchorSample = 0x04,
  SynthEpoch = 0x05,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamDomain domain,
                                    std::uint64_t index) noexcept {
  const auto salt = splitmix64(index + (static_cast<std::uint64_t>(domain) << 56));
  return splitmix64(master ^ salt);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
    std::uint64_t x = engine_();
    while (x < threshold) x = engine_();
    return x % bound;
  }

  // Uniform real in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Sequential-search inversion; large means are split into chunks so exp(-mean)
  // never underflows.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    constexpr double kChunk = 200.0;
    const auto chunks = static_cast<std::uint64_t>(std::ceil(mean / kChunk));
    const double lambda = mean / static_cast<double>(chunks);
    std::uint64_t total = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      double p = std::exp(-lambda);
      double cdf = p;
      const double u = uniform();
      std::uint64_t k = 0;
      while (u > cdf && k < 10000) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
      }
      total += k;
    }
    return total;
  }

 private:
  std::mt19937_64 engine_;
};

// Draws `count` distinct values from [0, population) in draw order using a
// partial Fisher-Yates shuffle.
inline std::vector<std::uint32_t> sample_without_replacement(Rng& rng, std::uint32_t population,
                                                             std::uint32_t count) {
  std::vector<std::uint32_t> pool(population);
  for (std::uint32_t i = 0; i < population; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace citegraph
