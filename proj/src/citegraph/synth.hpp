#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "citegraph/corpus.hpp"

namespace citegraph {

// Synthetic multi-epoch corpus parameters. All per-epoch lists have one entry
// per epoch.
struct SynthConfig {
  std::uint32_t epochs = 5;
  std::uint32_t sources_per_epoch = 1000;
  std::uint32_t targets_pool = 5000;  // split evenly across categories
  std::uint32_t categories = 8;
  std::vector<double> refs_per_source;
  std::vector<double> preferential_attachment_strength;
  std::vector<double> cross_field_mixing;
  std::uint64_t master_seed = 0;
  int start_year = 2000;
  int year_step = 1;

  // Throws Error{Config} describing the first violated constraint.
  void validate() const;
  int epoch_year(std::uint32_t epoch) const { return start_year + static_cast<int>(epoch) * year_step; }
};

SynthConfig parse_synth_config(const std::string& json_text);
std::string synth_config_to_json(const SynthConfig& config);

// One cross-section. Each source draws Poisson(refs) distinct references
// (at least one). A reference stays in the source's category with probability
// 1 - mixing, otherwise goes to a uniformly chosen other category; within a
// category pool a target is chosen with weight 1 + strength * current degree.
Corpus generate_epoch(const SynthConfig& config, std::uint32_t epoch);

struct SynthEpochFiles {
  std::uint32_t epoch = 0;
  int year = 0;
  std::filesystem::path nodes;
  std::filesystem::path edges;
  std::uint64_t sources = 0;
  std::uint64_t citations = 0;
};

// Writes epoch_<e>/nodes.tsv and epoch_<e>/edges.tsv under out_dir plus a
// synth_manifest.json recording the config. Epochs are independent.
std::vector<SynthEpochFiles> generate_series(const SynthConfig& config, const std::filesystem::path& out_dir,
                                             unsigned workers = 0);

}  // namespace citegraph
