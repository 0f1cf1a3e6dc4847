#include "agnn/graph.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace agnn {
namespace {

constexpr char kCooMagic[4] = {'A', 'G', 'N', '1'};
constexpr char kCscMagic[4] = {'A', 'G', 'C', '1'};

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

template <typename T>
void write_le(std::ofstream& out, T v) {
  // Host is little-endian on every supported target.
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_le(std::ifstream& in, const std::filesystem::path& path,
          std::uint64_t& offset) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in)
    fail("truncated binary file '" + path.string() + "' at byte offset " +
         std::to_string(offset));
  offset += sizeof(v);
  return v;
}

EdgeArrayCoo load_text(const std::filesystem::path& path, EdgeOrder order) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  EdgeArrayCoo g;
  std::uint64_t max_vid = 0;
  bool any = false;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::uint64_t a, b;
    char extra;
    int fields = std::sscanf(line.c_str(), "%lu %lu %c", &a, &b, &extra);
    if (fields != 2)
      fail("malformed edge at '" + path.string() + "' line " +
           std::to_string(lineno) + ": '" + line + "'");
    if (a > 0xffffffffULL || b > 0xffffffffULL)
      fail("VID out of 32-bit range at '" + path.string() + "' line " +
           std::to_string(lineno));
    Vid src = static_cast<Vid>(order == EdgeOrder::src_dst ? a : b);
    Vid dst = static_cast<Vid>(order == EdgeOrder::src_dst ? b : a);
    g.edges.push_back({dst, src});
    max_vid = std::max<std::uint64_t>({max_vid, src, dst});
    any = true;
  }
  g.node_count = any ? max_vid + 1 : 0;
  return g;
}

EdgeArrayCoo load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path.string() + "'");
  std::uint64_t offset = 0;
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCooMagic, 4) != 0)
    fail("bad magic in '" + path.string() + "' at byte offset 0");
  offset = 4;
  EdgeArrayCoo g;
  g.node_count = read_le<std::uint64_t>(in, path, offset);
  std::uint64_t e = read_le<std::uint64_t>(in, path, offset);
  g.edges.reserve(e);
  for (std::uint64_t i = 0; i < e; ++i) {
    std::uint64_t rec_off = offset;
    Vid dst = read_le<Vid>(in, path, offset);
    Vid src = read_le<Vid>(in, path, offset);
    if (dst >= g.node_count || src >= g.node_count)
      fail("VID >= declared node count in '" + path.string() +
           "' at byte offset " + std::to_string(rec_off));
    g.edges.push_back({dst, src});
  }
  return g;
}

}  // namespace

void EdgeArrayCoo::validate() const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].dst >= node_count || edges[i].src >= node_count)
      throw std::invalid_argument("edge " + std::to_string(i) +
                                  " references VID >= node count");
}

void CscGraph::validate() const {
  if (pointers.empty())
    throw std::invalid_argument("pointer array must have length n+1 >= 1");
  if (pointers.front() != 0)
    throw std::invalid_argument("pointers[0] != 0");
  if (pointers.back() != indices.size())
    throw std::invalid_argument("pointers[n] != edge count");
  for (std::size_t d = 0; d + 1 < pointers.size(); ++d) {
    if (pointers[d] > pointers[d + 1])
      throw std::invalid_argument("pointer array not non-decreasing at " +
                                  std::to_string(d));
    for (std::uint64_t i = pointers[d]; i + 1 < pointers[d + 1]; ++i)
      if (indices[i] > indices[i + 1])
        throw std::invalid_argument("indices not sorted within destination " +
                                    std::to_string(d));
  }
  std::uint64_t n = node_count();
  for (Vid s : indices)
    if (s >= n) throw std::invalid_argument("source VID >= node count");
}

EdgeArrayCoo load_graph(const std::filesystem::path& path, GraphFormat format,
                        EdgeOrder order) {
  if (!std::filesystem::exists(path))
    fail("no such file: '" + path.string() + "'");
  return format == GraphFormat::text_edge_list ? load_text(path, order)
                                               : load_binary(path);
}

void save_graph(const EdgeArrayCoo& g, const std::filesystem::path& path,
                GraphFormat format, EdgeOrder order) {
  if (format == GraphFormat::text_edge_list) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path.string() + "'");
    for (const Edge& e : g.edges) {
      if (order == EdgeOrder::src_dst)
        out << e.src << ' ' << e.dst << '\n';
      else
        out << e.dst << ' ' << e.src << '\n';
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path.string() + "'");
  out.write(kCooMagic, 4);
  write_le<std::uint64_t>(out, g.node_count);
  write_le<std::uint64_t>(out, g.edge_count());
  for (const Edge& e : g.edges) {
    write_le<Vid>(out, e.dst);
    write_le<Vid>(out, e.src);
  }
}

CscGraph load_csc(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open '" + path.string() + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCscMagic, 4) != 0)
    fail("bad magic in '" + path.string() + "' at byte offset 0");
  std::uint64_t offset = 4;
  CscGraph g;
  std::uint64_t n = read_le<std::uint64_t>(in, path, offset);
  std::uint64_t e = read_le<std::uint64_t>(in, path, offset);
  g.pointers.reserve(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i)
    g.pointers.push_back(read_le<std::uint64_t>(in, path, offset));
  g.indices.reserve(e);
  for (std::uint64_t i = 0; i < e; ++i)
    g.indices.push_back(read_le<Vid>(in, path, offset));
  return g;
}

void save_csc(const CscGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path.string() + "'");
  out.write(kCscMagic, 4);
  write_le<std::uint64_t>(out, g.node_count());
  write_le<std::uint64_t>(out, g.edge_count());
  for (std::uint64_t p : g.pointers) write_le<std::uint64_t>(out, p);
  for (Vid s : g.indices) write_le<Vid>(out, s);
}

CscGraph coo_to_csc_oracle(const EdgeArrayCoo& g) {
  g.validate();
  std::uint64_t n = g.node_count;
  CscGraph out;
  out.pointers.assign(n + 1, 0);
  for (const Edge& e : g.edges) out.pointers[e.dst + 1]++;
  for (std::uint64_t d = 0; d < n; ++d) out.pointers[d + 1] += out.pointers[d];
  out.indices.resize(g.edge_count());
  if (n == 0) return out;
  std::vector<std::uint64_t> cursor(out.pointers.begin(),
                                    out.pointers.begin() + n);
  for (const Edge& e : g.edges) out.indices[cursor[e.dst]++] = e.src;
  for (std::uint64_t d = 0; d < n; ++d)
    std::sort(out.indices.begin() + out.pointers[d],
              out.indices.begin() + out.pointers[d + 1]);
  return out;
}

EdgeArrayCoo apply_edge_updates(const EdgeArrayCoo& g, const EdgeDelta& d) {
  EdgeArrayCoo out = g;
  out.node_count += d.added_node_count;
  for (std::size_t i = 0; i < d.added_edges.size(); ++i) {
    const Edge& e = d.added_edges[i];
    if (e.dst >= out.node_count || e.src >= out.node_count)
      throw std::invalid_argument("delta edge " + std::to_string(i) +
                                  " references VID >= updated node count");
    out.edges.push_back(e);
  }
  return out;
}

DegreeStats degree_stats(const EdgeArrayCoo& g) {
  DegreeStats s;
  s.histogram.assign(g.node_count, 0);
  for (const Edge& e : g.edges) s.histogram[e.dst]++;
  for (std::uint64_t d : s.histogram) s.max_degree = std::max(s.max_degree, d);
  s.mean_degree = g.node_count == 0
                      ? 0.0
                      : static_cast<double>(g.edge_count()) / g.node_count;
  return s;
}

}  // namespace agnn
