#include "citegraph/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "citegraph/error.hpp"

namespace citegraph {
namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string opt_csv(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) fail(ErrorKind::Parse, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return {};
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

Json to_json(const LoadReport& r) {
  return Json{{"node_rows", r.node_rows},
              {"edge_rows", r.edge_rows},
              {"repeated_paper_rows", r.repeated_paper_rows},
              {"repeated_category_labels", r.repeated_category_labels},
              {"duplicate_citations", r.duplicate_citations},
              {"self_citations", r.self_citations},
              {"distinct_categories", r.distinct_categories}};
}

Json to_json(const CorpusSummary& s) {
  return Json{{"sources", s.sources},
              {"targets", s.targets},
              {"edges", s.edges},
              {"mean_references", num(s.mean_references)}};
}

Json to_json(const BuildReport& r) {
  return Json{{"sampled_year", r.sampled_year},
              {"sources", r.sources},
              {"targets", r.targets},
              {"edges", r.edges},
              {"zero_reference_sources", r.zero_reference_sources},
              {"other_year_citations", r.other_year_citations},
              {"unknown_source_citations", r.unknown_source_citations},
              {"duplicated_sources", r.duplicated_sources}};
}

Json to_json(const BoxStats& b) {
  return Json{{"n", b.n},         {"mean", num(b.mean)}, {"min", num(b.min)}, {"q1", num(b.q1)},
              {"median", num(b.median)}, {"q3", num(b.q3)},   {"max", num(b.max)}};
}

Json to_json(const GaussianFit& f) {
  return Json{{"mu", num(f.mu)}, {"sigma", num(f.sigma)}, {"degenerate", f.degenerate}};
}

Json to_json(const DistanceSummary& s) {
  Json j{{"weighted", s.weighted},
         {"mean_distance", num(s.mean_distance)},
         {"sd_across_repetitions", num(s.sd_across_repetitions)},
         {"reachable_fraction", num(s.reachable_fraction)},
         {"sample_size", s.sample_size},
         {"repetitions", s.repetitions},
         {"master_seed", s.master_seed},
         {"pairs_per_repetition", s.pairs_per_repetition},
         {"reachable_pairs", s.reachable_pairs}};
  Json means = Json::array();
  for (double m : s.repetition_means) means.push_back(num(m));
  j["repetition_means"] = std::move(means);
  Json hist = Json::array();
  for (const auto& b : s.histogram) {
    hist.push_back({{"distance", num(b.distance)}, {"count", b.count}, {"probability", num(b.probability)}});
  }
  j["histogram"] = std::move(hist);
  if (!s.histogram.empty()) j["gaussian_fit"] = to_json(fit_gaussian(s.histogram));
  return j;
}

Json to_json(const NullEnsembleResult& r) {
  Json means = Json::array();
  for (double m : r.per_network_mean_distance) means.push_back(num(m));
  return Json{{"networks", r.networks},
              {"sample_size", r.sample_size},
              {"swap_multiplier", r.swap_multiplier},
              {"master_seed", r.master_seed},
              {"ensemble_mean", num(r.ensemble_mean)},
              {"ensemble_sd", num(r.ensemble_sd)},
              {"attempted_swaps_per_network", r.attempted_swaps_per_network},
              {"accepted_swaps", r.per_network_accepted_swaps},
              {"per_network_mean_distance", std::move(means)}};
}

Json to_json(const ClusteringDistribution& d) {
  const char* filter = d.filter == EdgeFilter::All            ? "all"
                       : d.filter == EdgeFilter::SameCategory ? "same-category"
                                                              : "cross-category";
  return Json{{"filter", filter},
              {"log_base", "e"},
              {"edges", d.edges},
              {"defined", d.defined},
              {"undefined", d.undefined},
              {"undefined_fraction", num(d.undefined_fraction)},
              {"c", to_json(d.c_stats)}};
}

Json to_json(const RobustnessCurve& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) {
    pts.push_back({{"fraction", num(p.fraction)},
                   {"removed_targets", p.removed_targets},
                   {"mean_distance", num(p.mean_distance)},
                   {"sd", num(p.sd)},
                   {"reachable_fraction", num(p.reachable_fraction)},
                   {"pct_increase", num(p.pct_increase)}});
  }
  return Json{{"sample_size", c.sample_size},
              {"repetitions", c.repetitions},
              {"master_seed", c.master_seed},
              {"points", std::move(pts)}};
}

Json to_json(const WithinShareSummary& s) {
  Json shares = Json::array();
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    shares.push_back({{"category", s.labels[i]}, {"share", num(s.shares[i])}});
  }
  return Json{{"within_share", to_json(s.stats)}, {"categories", std::move(shares)}};
}

Json to_json(const PctChangeResult& r) {
  return Json{{"cells", r.cells},
              {"skipped_cells", r.skipped_cells},
              {"fraction_increased", num(r.fraction_increased)},
              {"dropped_labels", r.dropped_labels}};
}

std::string histogram_csv(const DistanceSummary& s) {
  std::string out = "distance,probability\n";
  for (const auto& b : s.histogram) out += format_number(b.distance) + "," + format_number(b.probability) + "\n";
  return out;
}

std::string clustering_edges_csv(const CitationGraph& graph, const ClusteringDistribution& d) {
  std::string out = "source_id,target_id,observed,expected,C,category_relation\n";
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    const auto& r = d.records[i];
    out += csv_field(graph.source_id(r.source));
    out += ',';
    out += csv_field(graph.target_id(r.target));
    out += ',' + std::to_string(r.observed) + ',' + format_number(r.expected) + ',' + opt_csv(r.c) + ',';
    out += i < d.relations.size() ? to_string(d.relations[i]) : "";
    out += '\n';
  }
  return out;
}

std::string robustness_csv(const RobustnessCurve& c) {
  std::string out = "fraction,mean_distance,sd,pct_increase\n";
  for (const auto& p : c.points) {
    out += format_number(p.fraction) + "," + format_number(p.mean_distance) + "," + format_number(p.sd) + "," +
           format_number(p.pct_increase) + "\n";
  }
  return out;
}

std::string lorenz_csv(const LorenzResult& l) {
  std::string out = "p,L\n";
  for (const auto& [p, v] : l.points) out += format_number(p) + "," + format_number(v) + "\n";
  return out;
}

std::string matrix_csv(const FieldMatrix& m) {
  std::string out = "category";
  for (const auto& c : m.col_labels) out += "," + csv_field(c);
  out += '\n';
  for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
    out += csv_field(m.row_labels[r]);
    for (std::size_t c = 0; c < m.col_labels.size(); ++c) out += "," + format_number(m.at(r, c));
    out += '\n';
  }
  return out;
}

std::string hh_csv(const std::vector<HhRow>& rows) {
  std::string out = "category,hh_all,hh_cross,n_citations\n";
  for (const auto& r : rows) {
    out += csv_field(r.category) + "," + opt_csv(r.hh_all) + "," + opt_csv(r.hh_cross) + "," +
           std::to_string(r.n_citations) + "\n";
  }
  return out;
}

std::string within_share_csv(const WithinShareSummary& s) {
  std::string out = "category,within_share\n";
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    out += csv_field(s.labels[i]) + "," + format_number(s.shares[i]) + "\n";
  }
  return out;
}

std::string pct_change_csv(const PctChangeResult& r) {
  std::string out = "pct_change,cumulative_fraction\n";
  for (const auto& [v, f] : r.cdf) out += format_number(v) + "," + format_number(f) + "\n";
  return out;
}

std::string null_networks_csv(const NullEnsembleResult& r) {
  std::string out = "network,mean_distance,reachable_fraction,accepted_swaps\n";
  for (std::size_t i = 0; i < r.per_network_mean_distance.size(); ++i) {
    out += std::to_string(i) + "," + format_number(r.per_network_mean_distance[i]) + "," +
           format_number(r.per_network_reachable_fraction[i]) + "," +
           std::to_string(r.per_network_accepted_swaps[i]) + "\n";
  }
  return out;
}

FieldMatrix parse_matrix_csv(std::string_view text, CellKind kind) {
  const auto rows = parse_csv(text);
  if (rows.empty()) fail(ErrorKind::Parse, "matrix CSV is empty");
  FieldMatrix m;
  m.kind = kind;
  m.col_labels.assign(rows[0].begin() + 1, rows[0].end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != m.col_labels.size() + 1) {
      fail(ErrorKind::Parse, "matrix CSV row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                                 " fields, expected " + std::to_string(m.col_labels.size() + 1));
    }
    m.row_labels.push_back(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto& f = row[c];
      if (f.empty()) {
        m.cells.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        fail(ErrorKind::Parse, "matrix CSV row " + std::to_string(r + 1) + ": invalid number '" + f + "'");
      }
      m.cells.push_back(v);
    }
  }
  return m;
}

}  // namespace citegraph
