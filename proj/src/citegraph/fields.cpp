#include "citegraph/fields.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <set>

#include "citegraph/distance.hpp"
#include "citegraph/error.hpp"
#include "citegraph/parallel.hpp"
#include "citegraph/rng.hpp"

namespace citegraph {

CategoryTable CategoryTable::from_papers(const std::vector<PaperRecord>& papers,
                                         std::optional<std::vector<std::string>> universe) {
  CategoryTable table;
  if (universe) {
    table.universe_ = std::move(*universe);
  } else {
    std::set<std::string> labels;
    for (const auto& p : papers) labels.insert(p.categories.begin(), p.categories.end());
    table.universe_.assign(labels.begin(), labels.end());
  }
  for (std::uint32_t i = 0; i < table.universe_.size(); ++i) {
    if (!table.label_index_.emplace(table.universe_[i], i).second) {
      fail(ErrorKind::Config, "category universe lists '" + table.universe_[i] + "' twice");
    }
  }
  for (const auto& p : papers) {
    std::optional<std::uint32_t> primary;
    for (const auto& label : p.categories) {
      const auto it = table.label_index_.find(label);
      if (it == table.label_index_.end()) {
        ++table.dropped_labels_;
      } else if (!primary) {
        primary = it->second;
      }
    }
    if (primary) {
      table.primary_.emplace(p.paper_id, *primary);
    } else if (!p.categories.empty()) {
      ++table.out_of_universe_;
    }
  }
  return table;
}

std::vector<std::string> CategoryTable::read_universe(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open category universe '" + path.string() + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    labels.push_back(line);
  }
  return labels;
}

std::optional<std::uint32_t> CategoryTable::primary(std::string_view paper_id) const {
  const auto it = primary_.find(std::string(paper_id));
  if (it == primary_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> CategoryTable::label_index(std::string_view label) const {
  const auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

NodeCategories categorize(const CitationGraph& graph, const CategoryTable& table) {
  NodeCategories out;
  out.source.resize(graph.source_count(), kNoCategory);
  out.target.resize(graph.target_count(), kNoCategory);
  for (std::uint32_t s = 0; s < graph.source_count(); ++s) {
    if (auto c = table.primary(graph.source_id(s))) out.source[s] = static_cast<std::int32_t>(*c);
  }
  for (std::uint32_t t = 0; t < graph.target_count(); ++t) {
    if (auto c = table.primary(graph.target_id(t))) out.target[t] = static_cast<std::int32_t>(*c);
  }
  return out;
}

namespace {

std::size_t slot(std::int32_t category, std::size_t k) {
  return category == kNoCategory ? k : static_cast<std::size_t>(category);
}

std::string label_of(const CategoryTable& table, std::size_t idx) {
  return idx < table.universe().size() ? table.universe()[idx] : std::string(kUnclassified);
}

}  // namespace

FieldMatrix citation_matrix(const CitationGraph& graph, const CategoryTable& table) {
  const std::size_t k = table.universe().size();
  if (k == 0) fail(ErrorKind::Config, "category universe is empty");
  const auto cats = categorize(graph, table);
  if (std::none_of(cats.source.begin(), cats.source.end(), [](auto c) { return c != kNoCategory; })) {
    fail(ErrorKind::Config, "no source paper carries a category");
  }

  const std::size_t w = k + 1;
  std::vector<std::uint64_t> raw(w * w, 0);
  bool unclassified_used = false;
  for (std::uint32_t s = 0; s < graph.source_count(); ++s) {
    const auto r = slot(cats.source[s], k);
    for (auto t : graph.targets_of(s)) {
      const auto c = slot(cats.target[t], k);
      if (r == k || c == k) unclassified_used = true;
      ++raw[r * w + c];
    }
  }

  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  if (unclassified_used) cols.push_back(k);
  std::vector<std::size_t> rows;
  for (auto r : cols) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < w; ++c) total += raw[r * w + c];
    if (total) rows.push_back(r);
  }

  FieldMatrix m;
  m.kind = CellKind::CitationShare;
  for (auto r : rows) m.row_labels.push_back(label_of(table, r));
  for (auto c : cols) m.col_labels.push_back(label_of(table, c));
  m.cells.reserve(rows.size() * cols.size());
  for (auto r : rows) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < w; ++c) total += raw[r * w + c];
    for (auto c : cols) {
      m.counts.push_back(raw[r * w + c]);
      m.cells.push_back(100.0 * static_cast<double>(raw[r * w + c]) / static_cast<double>(total));
    }
  }
  return m;
}

WithinShareSummary within_field_share_distribution(const FieldMatrix& matrix, bool include_unclassified) {
  WithinShareSummary out;
  for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
    const auto& label = matrix.row_labels[r];
    if (!include_unclassified && label == kUnclassified) continue;
    const auto it = std::find(matrix.col_labels.begin(), matrix.col_labels.end(), label);
    double share = 0.0;
    if (it != matrix.col_labels.end()) {
      share = matrix.at(r, static_cast<std::size_t>(it - matrix.col_labels.begin()));
    }
    out.labels.push_back(label);
    out.shares.push_back(share);
  }
  out.stats = box_stats(out.shares);
  return out;
}

std::optional<double> hh_index(std::span<const double> shares, HhVariant variant,
                               std::optional<std::size_t> own) {
  if (variant == HhVariant::CrossOnly && !own) {
    fail(ErrorKind::InvalidArgument, "cross-only HH index needs the own category");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < shares.size(); ++j) {
    if (shares[j] < 0.0 || !std::isfinite(shares[j])) {
      fail(ErrorKind::InvalidArgument, "HH shares must be finite and nonnegative");
    }
    if (variant == HhVariant::CrossOnly && j == *own) continue;
    total += shares[j];
  }
  if (total <= 0.0) return std::nullopt;
  double hh = 0.0;
  for (std::size_t j = 0; j < shares.size(); ++j) {
    if (variant == HhVariant::CrossOnly && j == *own) continue;
    const double s = shares[j] / total;
    hh += s * s;
  }
  return hh;
}

std::vector<HhRow> hh_table(const FieldMatrix& matrix, bool include_unclassified) {
  std::vector<HhRow> out;
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < matrix.col_labels.size(); ++c) {
    if (include_unclassified || matrix.col_labels[c] != kUnclassified) cols.push_back(c);
  }
  const bool have_counts = matrix.counts.size() == matrix.cells.size();
  for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
    const auto& label = matrix.row_labels[r];
    if (!include_unclassified && label == kUnclassified) continue;
    HhRow row;
    row.category = label;
    std::vector<double> shares;
    std::optional<std::size_t> own;
    for (auto c : cols) {
      if (matrix.col_labels[c] == label) own = shares.size();
      shares.push_back(have_counts ? static_cast<double>(matrix.count_at(r, c)) : matrix.at(r, c));
    }
    if (have_counts) {
      for (std::size_t c = 0; c < matrix.col_labels.size(); ++c) row.n_citations += matrix.count_at(r, c);
    }
    row.hh_all = hh_index(shares, HhVariant::All);
    if (own) {
      row.hh_cross = hh_index(shares, HhVariant::CrossOnly, own);
    } else {
      // No own column: every citation is cross-category.
      row.hh_cross = row.hh_all;
    }
    out.push_back(std::move(row));
  }
  return out;
}

CategoryDistanceResult category_distance_matrix(const CitationGraph& graph, const CategoryTable& table,
                                                std::uint32_t anchor_sample, std::uint64_t master_seed,
                                                unsigned workers) {
  const std::size_t k = table.universe().size();
  if (k == 0) fail(ErrorKind::Config, "category universe is empty");
  if (anchor_sample < 1) fail(ErrorKind::InvalidArgument, "anchor sample must be at least 1");
  if (graph.source_count() == 0) fail(ErrorKind::InvalidArgument, "graph has no source papers");

  CategoryDistanceResult out;
  out.clamped = anchor_sample > graph.source_count();
  out.anchors = std::min(anchor_sample, graph.source_count());
  Rng rng(derive_seed(master_seed, StreamDomain::AnchorSample, 0));
  const auto anchors = sample_without_replacement(rng, graph.source_count(), out.anchors);
  const auto cats = categorize(graph, table);

  const std::size_t w = k + 1;
  const std::size_t batches = (anchors.size() + MultiSourceBfs::kWidth - 1) / MultiSourceBfs::kWidth;
  workers = effective_workers(batches, workers);
  struct Partial {
    std::optional<MultiSourceBfs> bfs;
    std::vector<std::uint64_t> sum;
    std::vector<std::uint64_t> count;
  };
  std::vector<Partial> partial(workers);
  parallel_for(batches, workers, [&](std::size_t b, unsigned wk) {
    auto& p = partial[wk];
    if (!p.bfs) {
      p.bfs.emplace(graph);
      p.sum.assign(w * w, 0);
      p.count.assign(w * w, 0);
    }
    const std::size_t first = b * MultiSourceBfs::kWidth;
    const std::size_t n = std::min<std::size_t>(MultiSourceBfs::kWidth, anchors.size() - first);
    std::array<std::size_t, MultiSourceBfs::kWidth> anchor_col{};
    for (std::size_t i = 0; i < n; ++i) anchor_col[i] = slot(cats.source[anchors[first + i]], k);
    p.bfs->run(std::span(anchors).subspan(first, n), [&](std::uint32_t s, std::uint32_t level, std::uint64_t bits) {
      const std::size_t row = slot(cats.source[s], k) * w;
      while (bits) {
        const auto i = static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        p.sum[row + anchor_col[i]] += level;
        ++p.count[row + anchor_col[i]];
      }
    });
  });

  std::vector<std::uint64_t> sum(w * w, 0);
  std::vector<std::uint64_t> count(w * w, 0);
  for (const auto& p : partial) {
    if (p.sum.empty()) continue;
    for (std::size_t i = 0; i < w * w; ++i) {
      sum[i] += p.sum[i];
      count[i] += p.count[i];
    }
  }

  std::vector<std::uint8_t> row_used(w, 0);
  std::vector<std::uint8_t> col_used(w, 0);
  for (auto c : cats.source) row_used[slot(c, k)] = 1;
  for (auto a : anchors) col_used[slot(cats.source[a], k)] = 1;
  auto& m = out.matrix;
  m.kind = CellKind::MeanDistance;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < w; ++i) {
    if (row_used[i]) {
      rows.push_back(i);
      m.row_labels.push_back(label_of(table, i));
    }
    if (col_used[i]) {
      cols.push_back(i);
      m.col_labels.push_back(label_of(table, i));
    }
  }
  for (auto r : rows) {
    for (auto c : cols) {
      const auto n = count[r * w + c];
      m.counts.push_back(n);
      m.cells.push_back(n ? static_cast<double>(sum[r * w + c]) / static_cast<double>(n)
                          : std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

PctChangeResult pct_change_distribution(const FieldMatrix& early, const FieldMatrix& late) {
  PctChangeResult out;
  auto index_of = [](const std::vector<std::string>& labels, const std::string& l) -> std::optional<std::size_t> {
    const auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::set<std::string> dropped;
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::vector<std::pair<std::size_t, std::size_t>> cols;
  for (std::size_t r = 0; r < early.row_labels.size(); ++r) {
    if (auto j = index_of(late.row_labels, early.row_labels[r])) rows.emplace_back(r, *j);
    else dropped.insert(early.row_labels[r]);
  }
  for (const auto& l : late.row_labels) {
    if (!index_of(early.row_labels, l)) dropped.insert(l);
  }
  for (std::size_t c = 0; c < early.col_labels.size(); ++c) {
    if (auto j = index_of(late.col_labels, early.col_labels[c])) cols.emplace_back(c, *j);
    else dropped.insert(early.col_labels[c]);
  }
  for (const auto& l : late.col_labels) {
    if (!index_of(early.col_labels, l)) dropped.insert(l);
  }
  out.dropped_labels.assign(dropped.begin(), dropped.end());

  std::uint64_t increased = 0;
  for (const auto& [er, lr] : rows) {
    for (const auto& [ec, lc] : cols) {
      const double e = early.at(er, ec);
      const double l = late.at(lr, lc);
      if (!std::isfinite(e) || e == 0.0 || !std::isfinite(l)) {
        ++out.skipped_cells;
        continue;
      }
      const double change = 100.0 * (l - e) / e;
      if (change > 0.0) ++increased;
      out.changes.push_back(change);
    }
  }
  std::sort(out.changes.begin(), out.changes.end());
  out.cells = out.changes.size();
  for (std::size_t i = 0; i < out.changes.size(); ++i) {
    out.cdf.emplace_back(out.changes[i], static_cast<double>(i + 1) / static_cast<double>(out.cells));
  }
  out.fraction_increased = out.cells ? static_cast<double>(increased) / static_cast<double>(out.cells) : 0.0;
  return out;
}

}  // namespace citegraph
