#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "agnn/graph.hpp"

namespace agnn {

using CycleCount = std::uint64_t;

// One UPE processes `width` elements per cycle; `count` instances run in
// parallel under the scheduler's scoreboard.
struct UpeConfig {
  std::uint32_t count = 32;
  std::uint32_t width = 512;

  void validate() const;
  bool operator==(const UpeConfig&) const = default;
};

// Edge array ordered by (dst asc, src asc). Produced only by edge_ordering,
// consumed by the SCR reshaper.
struct SortedCoo {
  EdgeArrayCoo graph;
};

struct ChunkSortResult {
  std::vector<std::uint64_t> keys;
  CycleCount cycles = 0;
};

// LSD radix sort of one chunk, one set-partition pass per key bit, one cycle
// per pass. Sorts on the low key_bits bits.
ChunkSortResult upe_sort_chunk(std::span<const std::uint64_t> chunk,
                               unsigned key_bits, const UpeConfig& cfg);

// Same, but over an explicit list of bit positions (LSD order). Used by edge
// ordering to skip the dead bits between the packed src and dst fields.
ChunkSortResult upe_sort_chunk_bits(std::span<const std::uint64_t> chunk,
                                    std::span<const unsigned> bit_positions,
                                    const UpeConfig& cfg);

struct MergeResult {
  std::vector<std::uint64_t> keys;
  CycleCount cycles = 0;
};

// Two-way merge at w/2 elements per cycle: a w-element buffer takes w/2 from
// each side, sorts, emits the lower half, and refills from whichever array
// has the smaller head. Sides are padded with MAX sentinels, stripped from
// the output. cycles = ceil((|a|+|b|) / (w/2)).
MergeResult upe_merge(std::span<const std::uint64_t> a,
                      std::span<const std::uint64_t> b, std::uint32_t width);

struct OrderingResult {
  SortedCoo sorted;
  CycleCount sort_cycles = 0;   // chunk radix-sort phase
  CycleCount merge_cycles = 0;  // merge rounds at full UPE utilization
};

// Full edge-ordering path: concatenate (dst,src) into 64-bit keys, radix-sort
// chunks of w_upe keys round-robin over the UPEs, merge sorted runs pairwise
// until one remains, deconcatenate.
// key_bits defaults to 2*ceil(log2(n)) (src half at bit 0, dst half at bit
// 32); must be even, and each half must cover ceil(log2(n)) bits.
OrderingResult edge_ordering(const EdgeArrayCoo& g, const UpeConfig& cfg,
                             std::optional<unsigned> key_bits = {});

struct SelectResult {
  std::vector<Vid> sampled;
  CycleCount cycles = 0;  // one cycle per selection performed
};

// Unique random selection of min(k, |neighbors|) positions: an index array
// plus a sampled-bitmap; each iteration draws a uniform index among the
// unsampled ones and marks it, and a final set-partition with the bitmap as
// condition extracts the sampled neighborhood (in position order).
SelectResult uni_random_select(std::span<const Vid> neighbors, std::size_t k,
                               std::mt19937_64& rng);
SelectResult uni_random_select(std::span<const Vid> neighbors, std::size_t k,
                               std::uint64_t seed);

// Smallest b with 2^b > max(1, x-1); bit width of the VID range [0, x).
unsigned ceil_log2(std::uint64_t x);

}  // namespace agnn
