// citegraph command-line front end. Every subcommand writes its outputs and a
// manifest.json into --out; `replay` re-runs a manifest.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "citegraph/citegraph.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& message) { throw Failure{kExitUsage, "usage", message}; }
[[noreturn]] void data_error(const std::string& kind, const std::string& message) {
  throw Failure{kExitData, kind, message};
}

void check(cg_status status) {
  if (status == CG_OK) return;
  const int code = (status == CG_ERR_INVALID_ARGUMENT || status == CG_ERR_OUT_OF_RANGE) ? kExitUsage : kExitData;
  throw Failure{code, cg_status_name(status), cg_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using CorpusPtr = std::unique_ptr<cg_corpus, Deleter<cg_corpus, cg_corpus_free>>;
using GraphPtr = std::unique_ptr<cg_graph, Deleter<cg_graph, cg_graph_free>>;
using CategoriesPtr = std::unique_ptr<cg_categories, Deleter<cg_categories, cg_categories_free>>;
using ResultPtr = std::unique_ptr<cg_result, Deleter<cg_result, cg_result_free>>;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) data_error("internal", "sha256 init failed");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::vector<double> parse_fractions(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || errno != 0 || *end != '\0') usage_error(std::string("--") + flag + ": invalid number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) usage_error(std::string("--") + flag + " needs at least one value");
  return out;
}

unsigned threads_from_env() {
  const char* env = std::getenv("CITEGRAPH_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v > 4096) usage_error(std::string("CITEGRAPH_THREADS: invalid value '") + env + "'");
  return static_cast<unsigned>(v);
}

// Options shared by subcommands, filled by CLI11.
struct Options {
  std::string nodes, edges, graph, universe, config, early, late, manifest;
  int year = 0;
  std::string out;
  int workers = -1;
  std::string format = "both";
  bool report = false;
  bool save_snapshot = false;
  uint32_t sample_size = 2000;
  uint32_t reps = 30;
  uint64_t seed = 0;
  uint32_t networks = 30;
  uint32_t swap_multiplier = 10;
  std::string export_networks;
  std::string filter = "all";
  std::string top_fractions = "0.04";
  std::string fractions = "0.005,0.05";
  bool include_unclassified = false;
  uint32_t anchor_sample = 10000;
};

const std::set<std::string> kInputFlags = {"nodes", "edges", "graph", "category-universe", "config", "early", "late"};
const std::set<std::string> kUnrecordedFlags = {"out", "workers", "help"};

class Run {
 public:
  Run(std::string subcommand, CLI::App* sub, const Options& o) : subcommand_(std::move(subcommand)), opts_(o) {
    out_ = o.out;
    workers_ = o.workers >= 0 ? static_cast<unsigned>(o.workers) : threads_from_env();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames().front();
      if (kUnrecordedFlags.count(name)) continue;
      if (opt->get_expected_min() == 0) {
        params_[name] = opt->count() > 0;
        continue;
      }
      std::string value = opt->count() > 0 ? opt->results().front() : opt->get_default_str();
      if (value.empty()) continue;
      if (kInputFlags.count(name)) {
        const fs::path abs = fs::absolute(value).lexically_normal();
        value = abs.string();
        inputs_.push_back({{"flag", name}, {"path", value}, {"sha256", sha256_file(abs)}});
      }
      params_[name] = value;
    }
    std::error_code ec;
    fs::create_directories(out_, ec);
    if (ec) data_error("io", "cannot create '" + out_.string() + "': " + ec.message());
  }

  const Options& opts() const { return opts_; }
  unsigned workers() const { return workers_; }
  const fs::path& out() const { return out_; }
  bool want_json() const { return opts_.format != "csv"; }
  bool want_csv() const { return opts_.format != "json"; }

  void write(const std::string& name, const std::string& text) {
    std::ofstream f(out_ / name, std::ios::binary | std::ios::trunc);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
    if (!f) data_error("io", "cannot write '" + (out_ / name).string() + "'");
    outputs_.push_back(name);
  }
  void add_output(const std::string& name) { outputs_.push_back(name); }

  void result_json(const std::string& name, const cg_result* r) {
    if (want_json()) write(name, cg_result_json(r));
  }
  void result_table(const std::string& name, const cg_result* r, const char* table) {
    if (!want_csv()) return;
    const char* text = cg_result_table(r, table);
    if (!text) data_error("internal", std::string("missing table '") + table + "'");
    write(name, text);
  }

  void finish(uint64_t master_seed) {
    Json m;
    m["tool"] = "citegraph";
    m["version"] = cg_version();
    m["subcommand"] = subcommand_;
    m["master_seed"] = master_seed;
    m["params"] = params_;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    std::ofstream f(out_ / "manifest.json", std::ios::binary | std::ios::trunc);
    f << m.dump(2) << '\n';
    if (!f) data_error("io", "cannot write manifest");
  }

 private:
  std::string subcommand_;
  Options opts_;
  fs::path out_;
  unsigned workers_ = 0;
  Json params_ = Json::object();
  Json inputs_ = Json::array();
  std::vector<std::string> outputs_;
};

struct Loaded {
  CorpusPtr corpus;
  GraphPtr graph;
};

Loaded load(Run& run, bool need_corpus) {
  const auto& o = run.opts();
  Loaded l;
  if (!o.graph.empty()) {
    if (need_corpus) usage_error("this subcommand needs --nodes/--edges; a --graph snapshot has no categories");
    cg_graph* g = nullptr;
    check(cg_graph_load(o.graph.c_str(), &g));
    l.graph.reset(g);
    return l;
  }
  if (o.nodes.empty() || o.edges.empty()) usage_error("--nodes and --edges (or --graph) are required");
  cg_corpus* c = nullptr;
  check(cg_corpus_load(o.nodes.c_str(), o.edges.c_str(), &c));
  l.corpus.reset(c);
  cg_graph* g = nullptr;
  check(cg_graph_build(c, o.year, &g));
  l.graph.reset(g);
  if (o.report) {
    cg_result* r = nullptr;
    check(cg_corpus_report(c, &r));
    ResultPtr report(r);
    check(cg_graph_build_report(g, &r));
    ResultPtr build(r);
    Json j = Json::parse(cg_result_json(report.get()));
    j["build_report"] = Json::parse(cg_result_json(build.get()));
    run.write("load_report.json", j.dump(2));
  }
  return l;
}

CategoriesPtr categories(const Run& run, const cg_corpus* corpus) {
  const auto& u = run.opts().universe;
  cg_categories* c = nullptr;
  check(cg_categories_from_corpus(corpus, u.empty() ? nullptr : u.c_str(), &c));
  return CategoriesPtr(c);
}

cg_distance_params distance_params(const Run& run) {
  cg_distance_params p;
  cg_distance_params_init(&p);
  p.sample_size = run.opts().sample_size;
  p.repetitions = run.opts().reps;
  p.master_seed = run.opts().seed;
  p.workers = run.workers();
  return p;
}

void cmd_ingest_report(Run& run) {
  const auto& o = run.opts();
  if (o.nodes.empty() || o.edges.empty()) usage_error("--nodes and --edges are required");
  cg_corpus* c = nullptr;
  check(cg_corpus_load(o.nodes.c_str(), o.edges.c_str(), &c));
  CorpusPtr corpus(c);
  cg_result* r = nullptr;
  check(cg_corpus_report(c, &r));
  ResultPtr report(r);
  Json j = Json::parse(cg_result_json(report.get()));
  cg_graph* g = nullptr;
  check(cg_graph_build(c, o.year, &g));
  GraphPtr graph(g);
  check(cg_graph_build_report(g, &r));
  ResultPtr build(r);
  j["build_report"] = Json::parse(cg_result_json(build.get()));
  run.write("ingest_report.json", j.dump(2));
  if (o.save_snapshot) {
    check(cg_graph_save(g, (run.out() / "graph.cgbg").string().c_str()));
    run.add_output("graph.cgbg");
  }
  run.finish(0);
}

void cmd_distances(Run& run, bool weighted) {
  auto l = load(run, false);
  const auto p = distance_params(run);
  cg_result* r = nullptr;
  check(weighted ? cg_weighted_distances(l.graph.get(), &p, &r) : cg_distances(l.graph.get(), &p, &r));
  ResultPtr result(r);
  const std::string stem = weighted ? "weighted_distance" : "distance";
  run.result_json(stem + "_summary.json", r);
  run.result_table(stem + "_histogram.csv", r, "histogram");
  run.finish(p.master_seed);
}

void cmd_nullmodel(Run& run) {
  const auto& o = run.opts();
  auto l = load(run, false);
  cg_null_params p;
  cg_null_params_init(&p);
  p.networks = o.networks;
  p.sample_size = o.sample_size;
  p.swap_multiplier = o.swap_multiplier;
  p.master_seed = o.seed;
  p.workers = run.workers();
  cg_result* r = nullptr;
  check(cg_null_baseline(l.graph.get(), &p, &r));
  ResultPtr result(r);
  run.result_json("null_model.json", r);
  run.result_table("null_networks.csv", r, "networks");
  if (!o.export_networks.empty()) {
    for (double v : parse_fractions(o.export_networks, "export-network")) {
      if (v < 0 || v != static_cast<double>(static_cast<uint32_t>(v)) || v >= o.networks) {
        usage_error("--export-network: indices must be integers below --networks");
      }
      const auto k = static_cast<uint32_t>(v);
      cg_graph* g = nullptr;
      check(cg_null_network(l.graph.get(), &p, k, &g, nullptr));
      GraphPtr net(g);
      const std::string name = "null_network_" + std::to_string(k) + ".cgbg";
      check(cg_graph_save(g, (run.out() / name).string().c_str()));
      run.add_output(name);
    }
  }
  run.finish(p.master_seed);
}

void cmd_clustering(Run& run) {
  const auto& o = run.opts();
  const cg_edge_filter filter = o.filter == "all"              ? CG_FILTER_ALL
                                : o.filter == "same-category" ? CG_FILTER_SAME_CATEGORY
                                                               : CG_FILTER_CROSS_CATEGORY;
  const bool need_categories = filter != CG_FILTER_ALL || !o.nodes.empty();
  auto l = load(run, filter != CG_FILTER_ALL);
  CategoriesPtr cats;
  if (need_categories && l.corpus) cats = categories(run, l.corpus.get());
  cg_result* r = nullptr;
  check(cg_clustering(l.graph.get(), cats.get(), filter, run.want_csv() ? 1 : 0, run.workers(), &r));
  ResultPtr result(r);
  run.result_json("clustering.json", r);
  run.result_table("clustering_edges.csv", r, "edges");
  run.finish(0);
}

void cmd_impact(Run& run) {
  auto l = load(run, false);
  const auto tops = parse_fractions(run.opts().top_fractions, "top-fractions");
  cg_result* r = nullptr;
  check(cg_impact(l.graph.get(), tops.data(), tops.size(), &r));
  ResultPtr result(r);
  run.result_json("impact.json", r);
  run.result_table("lorenz.csv", r, "lorenz");
  run.finish(0);
}

void cmd_robustness(Run& run) {
  auto l = load(run, false);
  const auto fractions = parse_fractions(run.opts().fractions, "fractions");
  const auto p = distance_params(run);
  cg_result* r = nullptr;
  check(cg_robustness(l.graph.get(), fractions.data(), fractions.size(), &p, &r));
  ResultPtr result(r);
  run.result_json("robustness.json", r);
  run.result_table("robustness.csv", r, "curve");
  run.finish(p.master_seed);
}

void cmd_fields(Run& run) {
  auto l = load(run, true);
  auto cats = categories(run, l.corpus.get());
  cg_result* r = nullptr;
  check(cg_fields(l.graph.get(), cats.get(), run.opts().include_unclassified ? 1 : 0, &r));
  ResultPtr result(r);
  run.result_json("fields.json", r);
  run.result_table("citation_matrix.csv", r, "matrix");
  run.result_table("hh.csv", r, "hh");
  run.result_table("within_share.csv", r, "within");
  run.finish(0);
}

void cmd_field_distances(Run& run) {
  const auto& o = run.opts();
  auto l = load(run, true);
  auto cats = categories(run, l.corpus.get());
  cg_result* r = nullptr;
  check(cg_field_distances(l.graph.get(), cats.get(), o.anchor_sample, o.seed, run.workers(), &r));
  ResultPtr result(r);
  run.result_json("field_distances.json", r);
  run.result_table("distance_matrix.csv", r, "matrix");
  run.finish(o.seed);
}

void cmd_pct_change(Run& run) {
  const auto early = read_file(run.opts().early);
  const auto late = read_file(run.opts().late);
  cg_result* r = nullptr;
  check(cg_pct_change(early.c_str(), late.c_str(), &r));
  ResultPtr result(r);
  run.result_json("pct_change.json", r);
  run.result_table("pct_change_cdf.csv", r, "cdf");
  run.finish(0);
}

void cmd_synth(Run& run, bool seed_given) {
  Json config;
  try {
    config = Json::parse(read_file(run.opts().config));
  } catch (const Json::exception& e) {
    usage_error(std::string("--config: ") + e.what());
  }
  if (seed_given) config["master_seed"] = run.opts().seed;
  const uint64_t seed = config.value("master_seed", uint64_t{0});
  cg_result* r = nullptr;
  const cg_status status = cg_synth(config.dump().c_str(), run.out().string().c_str(), run.workers(), &r);
  if (status == CG_ERR_CONFIG) usage_error(cg_last_error());
  check(status);
  ResultPtr result(r);
  const Json manifest = Json::parse(cg_result_json(r));
  for (const auto& e : manifest.at("epochs")) {
    run.add_output(e.at("nodes").get<std::string>());
    run.add_output(e.at("edges").get<std::string>());
  }
  run.add_output("synth_manifest.json");
  run.finish(seed);
}

void add_graph_inputs(CLI::App* sub, Options& o, bool year_required = true) {
  sub->add_option("--nodes", o.nodes, "nodes.tsv")->check(CLI::ExistingFile);
  sub->add_option("--edges", o.edges, "edges.tsv")->check(CLI::ExistingFile);
  auto* year = sub->add_option("--year", o.year, "Sampled year");
  sub->add_option("--graph", o.graph, "Graph snapshot instead of --nodes/--edges/--year")
      ->check(CLI::ExistingFile)
      ->excludes("--nodes")
      ->excludes("--edges")
      ->excludes(year);
  if (year_required) sub->get_option("--nodes")->needs(year);
  sub->add_flag("--report", o.report, "Also write load_report.json");
}

void add_common(CLI::App* sub, Options& o, bool with_format = true) {
  sub->add_option("--out", o.out, "Output directory")->required();
  sub->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->check(CLI::Range(0, 4096));
  if (with_format) {
    sub->add_option("--format", o.format, "json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
  }
}

void add_sampling(CLI::App* sub, Options& o) {
  sub->add_option("--sample-size", o.sample_size, "Sources per repetition")
      ->check(CLI::Range(2u, 0xffffffffu))
      ->capture_default_str();
  sub->add_option("--reps", o.reps, "Repetitions")->check(CLI::Range(1u, 0xffffffffu))->capture_default_str();
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
}

int dispatch(std::vector<std::string> args);

int replay(const Options& o) {
  const Json m = [&] {
    try {
      return Json::parse(read_file(o.manifest));
    } catch (const Json::exception& e) {
      usage_error(std::string("--manifest: ") + e.what());
    }
  }();
  if (!m.contains("subcommand") || !m.contains("params")) usage_error("--manifest: not a citegraph manifest");
  for (const auto& in : m.value("inputs", Json::array())) {
    const auto path = in.at("path").get<std::string>();
    if (sha256_file(path) != in.at("sha256").get<std::string>()) {
      data_error("input_changed", "input '" + path + "' no longer matches its recorded digest");
    }
  }
  std::vector<std::string> args{m.at("subcommand").get<std::string>()};
  for (const auto& [name, value] : m.at("params").items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + name);
    } else {
      args.push_back("--" + name);
      args.push_back(value.get<std::string>());
    }
  }
  args.push_back("--out");
  args.push_back(o.out);
  if (o.workers >= 0) {
    args.push_back("--workers");
    args.push_back(std::to_string(o.workers));
  }
  return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
  Options o;
  CLI::App app{"Citation network measurement toolkit", "citegraph"};
  app.set_version_flag("--version", std::string(cg_version()));
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest-report", "Load a corpus and report counts");
  ingest->add_option("--nodes", o.nodes, "nodes.tsv")->required()->check(CLI::ExistingFile);
  ingest->add_option("--edges", o.edges, "edges.tsv")->required()->check(CLI::ExistingFile);
  ingest->add_option("--year", o.year, "Sampled year")->required();
  ingest->add_flag("--save-snapshot", o.save_snapshot, "Write graph.cgbg");
  add_common(ingest, o, false);

  auto* distances = app.add_subcommand("distances", "Sampled mean source-to-source distance");
  add_graph_inputs(distances, o);
  add_sampling(distances, o);
  add_common(distances, o);

  auto* weighted = app.add_subcommand("weighted-distances", "Sampled distances over the weighted co-citation projection");
  add_graph_inputs(weighted, o);
  add_sampling(weighted, o);
  add_common(weighted, o);

  auto* nullmodel = app.add_subcommand("nullmodel", "Distance baseline over degree-preserving random networks");
  add_graph_inputs(nullmodel, o);
  nullmodel->add_option("--networks", o.networks, "Random networks")
      ->check(CLI::Range(1u, 0xffffffffu))
      ->capture_default_str();
  nullmodel->add_option("--sample-size", o.sample_size, "Sources sampled per network")
      ->check(CLI::Range(2u, 0xffffffffu))
      ->capture_default_str();
  nullmodel->add_option("--swap-multiplier", o.swap_multiplier, "Swap attempts per edge")
      ->check(CLI::Range(1u, 0xffffffffu))
      ->capture_default_str();
  nullmodel->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  nullmodel->add_option("--export-network", o.export_networks, "Comma-separated network indices to save as snapshots");
  add_common(nullmodel, o);

  auto* clustering = app.add_subcommand("clustering", "Edge clustering coefficient distribution");
  add_graph_inputs(clustering, o);
  clustering->add_option("--filter", o.filter, "all, same-category or cross-category")
      ->check(CLI::IsMember({"all", "same-category", "cross-category"}))
      ->capture_default_str();
  clustering->add_option("--category-universe", o.universe, "Category labels, one per line")->check(CLI::ExistingFile);
  add_common(clustering, o);

  auto* impact = app.add_subcommand("impact", "Lorenz curve, Gini and top shares of target degrees");
  add_graph_inputs(impact, o);
  impact->add_option("--top-fractions", o.top_fractions, "Comma-separated top fractions")->capture_default_str();
  add_common(impact, o);

  auto* robustness = app.add_subcommand("robustness", "Mean distance after removing the most-cited targets");
  add_graph_inputs(robustness, o);
  robustness->add_option("--fractions", o.fractions, "Comma-separated removal fractions")->capture_default_str();
  add_sampling(robustness, o);
  add_common(robustness, o);

  auto* fields = app.add_subcommand("fields", "Citation matrix, HH indices and within-field shares");
  add_graph_inputs(fields, o);
  fields->add_option("--category-universe", o.universe, "Category labels, one per line")->check(CLI::ExistingFile);
  fields->add_flag("--include-unclassified", o.include_unclassified, "Keep the unclassified row and column");
  add_common(fields, o);

  auto* field_distances = app.add_subcommand("field-distances", "Mean distance between categories");
  add_graph_inputs(field_distances, o);
  field_distances->add_option("--category-universe", o.universe, "Category labels, one per line")
      ->check(CLI::ExistingFile);
  field_distances->add_option("--anchor-sample", o.anchor_sample, "Anchor sources")
      ->check(CLI::Range(1u, 0xffffffffu))
      ->capture_default_str();
  field_distances->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  add_common(field_distances, o);

  auto* pct = app.add_subcommand("pct-change", "Distribution of cell changes between two matrices");
  pct->add_option("--early", o.early, "Earlier matrix CSV")->required()->check(CLI::ExistingFile);
  pct->add_option("--late", o.late, "Later matrix CSV")->required()->check(CLI::ExistingFile);
  add_common(pct, o);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic multi-epoch corpus");
  synth->add_option("--config", o.config, "Synth config JSON")->required()->check(CLI::ExistingFile);
  auto* synth_seed = synth->add_option("--seed", o.seed, "Override the config master_seed");
  add_common(synth, o, false);

  auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest into a new output directory");
  replay_cmd->add_option("--manifest", o.manifest, "manifest.json")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--out", o.out, "Output directory")->required();
  replay_cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->check(CLI::Range(0, 4096));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << cg_version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "replay") return replay(o);

  Run run(name, sub, o);
  if (name == "ingest-report") cmd_ingest_report(run);
  else if (name == "distances") cmd_distances(run, false);
  else if (name == "weighted-distances") cmd_distances(run, true);
  else if (name == "nullmodel") cmd_nullmodel(run);
  else if (name == "clustering") cmd_clustering(run);
  else if (name == "impact") cmd_impact(run);
  else if (name == "robustness") cmd_robustness(run);
  else if (name == "fields") cmd_fields(run);
  else if (name == "field-distances") cmd_field_distances(run);
  else if (name == "pct-change") cmd_pct_change(run);
  else if (name == "synth") cmd_synth(run, synth_seed->count() > 0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const Failure& f) {
    Json err{{"error", f.kind}, {"message", f.message}, {"exit_code", f.exit_code}};
    std::cerr << err.dump() << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    Json err{{"error", "internal"}, {"message", e.what()}, {"exit_code", kExitData}};
    std::cerr << err.dump() << '\n';
    return kExitData;
  }
}
