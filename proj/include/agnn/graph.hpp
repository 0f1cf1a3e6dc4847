#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace agnn {

using Vid = std::uint32_t;

struct Edge {
  Vid dst;
  Vid src;
  bool operator==(const Edge&) const = default;
};

// Unsorted edge list, the raw pipeline input. VIDs are dense in [0, node_count);
// duplicate edges and self-loops are allowed and preserved.
struct EdgeArrayCoo {
  std::vector<Edge> edges;
  std::uint64_t node_count = 0;

  std::uint64_t edge_count() const { return edges.size(); }

  // Throws std::invalid_argument if any endpoint is >= node_count.
  void validate() const;
};

// Compressed sparse column graph: pointers has length n+1, indices holds the
// source VIDs of each destination's edges, sorted ascending per destination.
struct CscGraph {
  std::vector<std::uint64_t> pointers;
  std::vector<Vid> indices;

  std::uint64_t node_count() const {
    return pointers.empty() ? 0 : pointers.size() - 1;
  }
  std::uint64_t edge_count() const { return indices.size(); }

  std::span<const Vid> neighbors(Vid dst) const {
    return {indices.data() + pointers[dst],
            indices.data() + pointers[dst + 1]};
  }

  void validate() const;
  bool operator==(const CscGraph&) const = default;
};

// Append-only graph update: new edges plus new VIDs appended densely after
// the existing ID range.
struct EdgeDelta {
  std::vector<Edge> added_edges;
  std::uint64_t added_node_count = 0;
};

enum class GraphFormat { text_edge_list, binary_coo };

// Column order of text edge-list files. The on-disk convention is ambiguous
// in the wild, so it is selectable; default is "src dst".
enum class EdgeOrder { src_dst, dst_src };

EdgeArrayCoo load_graph(const std::filesystem::path& path, GraphFormat format,
                        EdgeOrder order = EdgeOrder::src_dst);
void save_graph(const EdgeArrayCoo& g, const std::filesystem::path& path,
                GraphFormat format, EdgeOrder order = EdgeOrder::src_dst);

CscGraph load_csc(const std::filesystem::path& path);
void save_csc(const CscGraph& g, const std::filesystem::path& path);

// Reference conversion by counting sort; used as the test oracle for the
// simulated conversion path.
CscGraph coo_to_csc_oracle(const EdgeArrayCoo& g);

EdgeArrayCoo apply_edge_updates(const EdgeArrayCoo& g, const EdgeDelta& d);

struct DegreeStats {
  std::uint64_t max_degree = 0;
  double mean_degree = 0.0;
  std::vector<std::uint64_t> histogram;  // in-degree (dst side) per node
};

DegreeStats degree_stats(const EdgeArrayCoo& g);

}  // namespace agnn
