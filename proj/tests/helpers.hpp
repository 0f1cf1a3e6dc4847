#pragma once

#include <random>

#include "agnn/graph.hpp"

namespace agnn::testing {

inline EdgeArrayCoo random_graph(std::uint64_t n, std::uint64_t e,
                                 std::mt19937_64& rng) {
  EdgeArrayCoo g;
  g.node_count = n;
  g.edges.reserve(e);
  for (std::uint64_t i = 0; i < e; ++i)
    g.edges.push_back({Vid(rng() % n), Vid(rng() % n)});
  return g;
}

// Every node has exactly `deg` in-edges with uniformly random sources.
inline EdgeArrayCoo regular_graph(std::uint64_t n, std::uint64_t deg,
                                  std::mt19937_64& rng) {
  EdgeArrayCoo g;
  g.node_count = n;
  g.edges.reserve(n * deg);
  for (std::uint64_t d = 0; d < n; ++d)
    for (std::uint64_t i = 0; i < deg; ++i)
      g.edges.push_back({Vid(d), Vid(rng() % n)});
  return g;
}

}  // namespace agnn::testing
