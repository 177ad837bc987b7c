// Binary snapshot of a CitationGraph.
//
//   offset  size  field
//   0       4     magic "CGBG"
//   4       4     format version, u32 little-endian (currently 1)
//   8       8     S, u64 LE
//   16      8     T, u64 LE
//   24      8     M, u64 LE
//   32      ...   per source s in index order: varint degree, then the sorted
//                 target indices as varint deltas (first delta from 0)
//           ...   S source ids, each varint byte length + UTF-8 bytes
//           ...   T target ids, same encoding
//           8     FNV-1a 64 checksum of every preceding byte, u64 LE
//
// Varints are unsigned LEB128. The encoding is canonical, so
// save(load(bytes)) == bytes.

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "citegraph/error.hpp"
#include "citegraph/graph.hpp"

namespace citegraph {
namespace {

constexpr std::array<char, 4> kMagic{'C', 'G', 'B', 'G'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      hash_ = (hash_ ^ static_cast<unsigned char>(data[i])) * 0x100000001B3ULL;
    }
    out_.write(data, static_cast<std::streamsize>(n));
  }
  void fixed(std::uint64_t v, int width) {
    char buf[8];
    for (int i = 0; i < width; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    bytes(buf, static_cast<std::size_t>(width));
  }
  void varint(std::uint64_t v) {
    char buf[10];
    std::size_t n = 0;
    do {
      auto byte = static_cast<unsigned char>(v & 0x7F);
      v >>= 7;
      if (v) byte |= 0x80;
      buf[n++] = static_cast<char>(byte);
    } while (v);
    bytes(buf, n);
  }
  void string(const std::string& s) {
    varint(s.size());
    bytes(s.data(), s.size());
  }
  std::uint64_t hash() const { return hash_; }

 private:
  std::ostream& out_;
  std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* data, std::size_t n) {
    in_.read(data, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) fail(ErrorKind::Parse, "snapshot truncated");
    for (std::size_t i = 0; i < n; ++i) {
      hash_ = (hash_ ^ static_cast<unsigned char>(data[i])) * 0x100000001B3ULL;
    }
  }
  std::uint64_t fixed(int width) {
    char buf[8];
    bytes(buf, static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t{static_cast<unsigned char>(buf[i])} << (8 * i);
    return v;
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      char c;
      bytes(&c, 1);
      const auto byte = static_cast<unsigned char>(c);
      v |= std::uint64_t{byte & 0x7Fu} << shift;
      if (!(byte & 0x80)) {
        if (byte == 0 && shift != 0) fail(ErrorKind::Parse, "snapshot varint not canonical");
        return v;
      }
    }
    fail(ErrorKind::Parse, "snapshot varint overflow");
  }
  std::string string() {
    const auto n = varint();
    if (n > (std::uint64_t{1} << 32)) fail(ErrorKind::Parse, "snapshot id length implausible");
    std::string s(n, '\0');
    if (n) bytes(s.data(), n);
    return s;
  }
  std::uint64_t hash() const { return hash_; }

 private:
  std::istream& in_;
  std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

}  // namespace

void save_snapshot(const CitationGraph& graph, std::ostream& out) {
  Writer w(out);
  w.bytes(kMagic.data(), kMagic.size());
  w.fixed(kVersion, 4);
  w.fixed(graph.source_count(), 8);
  w.fixed(graph.target_count(), 8);
  w.fixed(graph.edge_count(), 8);
  for (std::uint32_t s = 0; s < graph.source_count(); ++s) {
    const auto adj = graph.targets_of(s);
    w.varint(adj.size());
    std::uint32_t prev = 0;
    for (auto t : adj) {
      w.varint(t - prev);
      prev = t;
    }
  }
  for (const auto& id : graph.source_ids()) w.string(id);
  for (const auto& id : graph.target_ids()) w.string(id);
  const auto checksum = w.hash();
  w.fixed(checksum, 8);
  if (!out) fail(ErrorKind::Io, "snapshot write failed");
}

CitationGraph load_snapshot(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kMagic) fail(ErrorKind::Parse, "not a citegraph snapshot (bad magic)");
  const auto version = r.fixed(4);
  if (version != kVersion) fail(ErrorKind::Parse, "unsupported snapshot version " + std::to_string(version));
  const auto S = r.fixed(8);
  const auto T = r.fixed(8);
  const auto M = r.fixed(8);
  if (S > UINT32_MAX || T > UINT32_MAX) fail(ErrorKind::Parse, "snapshot node counts out of range");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(M, 1u << 26)));
  for (std::uint64_t s = 0; s < S; ++s) {
    const auto degree = r.varint();
    std::uint64_t t = 0;
    for (std::uint64_t k = 0; k < degree; ++k) {
      const auto delta = r.varint();
      if (k > 0 && delta == 0) fail(ErrorKind::Parse, "snapshot adjacency not strictly ascending");
      t += delta;
      if (t >= T) fail(ErrorKind::Parse, "snapshot target index out of range");
      edges.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t)});
    }
  }
  if (edges.size() != M) fail(ErrorKind::Parse, "snapshot edge count mismatch");
  std::vector<std::string> source_ids(S);
  std::vector<std::string> target_ids(T);
  for (auto& id : source_ids) id = r.string();
  for (auto& id : target_ids) id = r.string();
  const auto expected = r.hash();
  if (r.fixed(8) != expected) fail(ErrorKind::Parse, "snapshot checksum mismatch");
  return CitationGraph::from_edges(std::move(source_ids), std::move(target_ids), edges);
}

}  // namespace citegraph
