#include "citegraph/synth.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "citegraph/error.hpp"
#include "citegraph/parallel.hpp"
#include "citegraph/rng.hpp"

namespace citegraph {

using nlohmann::ordered_json;

void SynthConfig::validate() const {
  auto bad = [](const std::string& msg) { fail(ErrorKind::Config, "synth config: " + msg); };
  if (epochs < 1) bad("epochs must be at least 1");
  if (sources_per_epoch < 1) bad("sources_per_epoch must be at least 1");
  if (categories < 1) bad("categories must be at least 1");
  if (targets_pool < categories) bad("targets_pool must hold at least one target per category");
  if (refs_per_source.size() != epochs) bad("refs_per_source needs one entry per epoch");
  if (preferential_attachment_strength.size() != epochs) bad("preferential_attachment_strength needs one entry per epoch");
  if (cross_field_mixing.size() != epochs) bad("cross_field_mixing needs one entry per epoch");
  for (double r : refs_per_source) {
    if (!(r > 0.0) || !std::isfinite(r)) bad("refs_per_source entries must be positive");
    if (r * 4.0 > static_cast<double>(targets_pool / categories)) {
      bad("each category pool must hold at least 4x the mean reference count");
    }
  }
  for (double s : preferential_attachment_strength) {
    if (!(s >= 0.0) || !std::isfinite(s)) bad("preferential_attachment_strength entries must be >= 0");
  }
  for (double m : cross_field_mixing) {
    if (!(m >= 0.0 && m <= 1.0)) bad("cross_field_mixing entries must lie in [0, 1]");
    if (m > 0.0 && categories < 2) bad("cross_field_mixing > 0 needs at least 2 categories");
  }
}

SynthConfig parse_synth_config(const std::string& json_text) {
  SynthConfig c;
  try {
    const auto j = ordered_json::parse(json_text);
    c.epochs = j.at("epochs").get<std::uint32_t>();
    c.sources_per_epoch = j.at("sources_per_epoch").get<std::uint32_t>();
    c.targets_pool = j.at("targets_pool").get<std::uint32_t>();
    c.categories = j.at("categories").get<std::uint32_t>();
    c.refs_per_source = j.at("refs_per_source").get<std::vector<double>>();
    c.preferential_attachment_strength = j.at("preferential_attachment_strength").get<std::vector<double>>();
    c.cross_field_mixing = j.at("cross_field_mixing").get<std::vector<double>>();
    c.master_seed = j.value("master_seed", std::uint64_t{0});
    c.start_year = j.value("start_year", 2000);
    c.year_step = j.value("year_step", 1);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, std::string("synth config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
  ordered_json j;
  j["epochs"] = c.epochs;
  j["sources_per_epoch"] = c.sources_per_epoch;
  j["targets_pool"] = c.targets_pool;
  j["categories"] = c.categories;
  j["refs_per_source"] = c.refs_per_source;
  j["preferential_attachment_strength"] = c.preferential_attachment_strength;
  j["cross_field_mixing"] = c.cross_field_mixing;
  j["master_seed"] = c.master_seed;
  j["start_year"] = c.start_year;
  j["year_step"] = c.year_step;
  return j.dump(2);
}

namespace {

std::string category_label(std::uint32_t c) {
  std::string digits = std::to_string(c);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "F" + digits;
}

// Degree-weighted sampling with weight 1 + strength * degree: pick uniformly
// with probability size / (size + strength * citations), otherwise pick a
// random earlier citation's target.
struct CategoryPool {
  std::uint32_t first = 0;
  std::uint32_t size = 0;
  std::vector<std::uint32_t> cited;  // one entry per citation received

  std::uint32_t draw(Rng& rng, double strength) const {
    const double attachment = strength * static_cast<double>(cited.size());
    if (cited.empty() || rng.uniform() * (static_cast<double>(size) + attachment) < static_cast<double>(size)) {
      return first + static_cast<std::uint32_t>(rng.below(size));
    }
    return cited[rng.below(cited.size())];
  }
};

}  // namespace

Corpus generate_epoch(const SynthConfig& config, std::uint32_t epoch) {
  config.validate();
  if (epoch >= config.epochs) fail(ErrorKind::Config, "epoch index out of range");
  Rng rng(derive_seed(config.master_seed, StreamDomain::SynthEpoch, epoch));
  const auto k = config.categories;
  const double refs = config.refs_per_source[epoch];
  const double strength = config.preferential_attachment_strength[epoch];
  const double mixing = config.cross_field_mixing[epoch];
  const int year = config.epoch_year(epoch);

  std::vector<CategoryPool> pools(k);
  const std::uint32_t base = config.targets_pool / k;
  const std::uint32_t extra = config.targets_pool % k;
  std::uint32_t next = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    pools[c].first = next;
    pools[c].size = base + (c < extra ? 1 : 0);
    next += pools[c].size;
  }
  std::vector<std::uint32_t> target_category(config.targets_pool);
  for (std::uint32_t c = 0; c < k; ++c) {
    for (std::uint32_t j = 0; j < pools[c].size; ++j) target_category[pools[c].first + j] = c;
  }

  const std::string prefix = "e" + std::to_string(epoch) + "-";
  Corpus corpus;
  std::vector<std::uint8_t> target_cited(config.targets_pool, 0);
  std::vector<std::uint32_t> chosen;
  std::unordered_set<std::uint32_t> chosen_set;
  for (std::uint32_t i = 0; i < config.sources_per_epoch; ++i) {
    const auto own = static_cast<std::uint32_t>(rng.below(k));
    const auto wanted = std::max<std::uint64_t>(1, rng.poisson(refs));
    chosen.clear();
    chosen_set.clear();
    for (std::uint64_t r = 0; r < wanted; ++r) {
      std::uint32_t category = own;
      if (k > 1 && rng.bernoulli(mixing)) {
        category = static_cast<std::uint32_t>(rng.below(k - 1));
        if (category >= own) ++category;
      }
      // Redraw on repeats; a reference that keeps colliding is dropped.
      for (int attempt = 0; attempt < 64; ++attempt) {
        const auto t = pools[category].draw(rng, strength);
        if (chosen_set.insert(t).second) {
          chosen.push_back(t);
          break;
        }
      }
    }
    const std::string source_id = prefix + "s" + std::to_string(i);
    corpus.papers.push_back({source_id, year, {category_label(own)}});
    for (auto t : chosen) {
      pools[target_category[t]].cited.push_back(t);
      target_cited[t] = 1;
      corpus.citations.push_back({source_id, prefix + "t" + std::to_string(t)});
    }
  }
  for (std::uint32_t t = 0; t < config.targets_pool; ++t) {
    if (target_cited[t]) {
      corpus.papers.push_back({prefix + "t" + std::to_string(t), year - 1, {category_label(target_category[t])}});
    }
  }
  corpus.report.node_rows = corpus.papers.size();
  corpus.report.edge_rows = corpus.citations.size();
  corpus.report.distinct_categories = k;
  return corpus;
}

std::vector<SynthEpochFiles> generate_series(const SynthConfig& config, const std::filesystem::path& out_dir,
                                             unsigned workers) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create '" + out_dir.string() + "': " + ec.message());

  std::vector<SynthEpochFiles> files(config.epochs);
  parallel_for(config.epochs, workers, [&](std::size_t e, unsigned) {
    const auto epoch = static_cast<std::uint32_t>(e);
    const auto corpus = generate_epoch(config, epoch);
    const auto dir = out_dir / ("epoch_" + std::to_string(epoch));
    std::error_code dir_ec;
    std::filesystem::create_directories(dir, dir_ec);
    if (dir_ec) fail(ErrorKind::Io, "cannot create '" + dir.string() + "'");
    auto& f = files[e];
    f.epoch = epoch;
    f.year = config.epoch_year(epoch);
    f.nodes = dir / "nodes.tsv";
    f.edges = dir / "edges.tsv";
    f.sources = config.sources_per_epoch;
    f.citations = corpus.citations.size();
    write_corpus(corpus, f.nodes, f.edges);
  });

  ordered_json manifest;
  manifest["config"] = ordered_json::parse(synth_config_to_json(config));
  manifest["epochs"] = ordered_json::array();
  for (const auto& f : files) {
    manifest["epochs"].push_back({{"epoch", f.epoch},
                                  {"year", f.year},
                                  {"nodes", std::filesystem::relative(f.nodes, out_dir).generic_string()},
                                  {"edges", std::filesystem::relative(f.edges, out_dir).generic_string()},
                                  {"sources", f.sources},
                                  {"citations", f.citations}});
  }
  std::ofstream out(out_dir / "synth_manifest.json", std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) fail(ErrorKind::Io, "cannot write synth manifest");
  return files;
}

}  // namespace citegraph
