#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "agnn/upe.hpp"

namespace agnn {

// One SCR slot resolves one target VID per cycle; each slot examines up to
// `width` sorted COO elements through its comparator lanes.
struct ScrConfig {
  std::uint32_t count = 8;   // slots (targets per cycle)
  std::uint32_t width = 512; // comparator lanes per slot

  void validate() const;
  bool operator==(const ScrConfig&) const = default;
};

// First-occurrence VID renumbering map. New VIDs are dense 0..size-1; the
// position of an original VID in `originals` is its new VID.
struct ReindexMap {
  std::vector<Vid> originals;

  std::uint64_t next_counter() const { return originals.size(); }

  // Functional twin of the filter-tree search; the cycle model for it lives
  // in reindex_lookup.
  std::unordered_map<Vid, Vid> position;
};

// Occurrence count of each target VID in a sorted window, via the
// comparator + adder-tree identity count(=t) = count(>=t) - count(>=t+1).
// Models one cycle of reshaper work.
std::vector<std::uint64_t> scr_count_window(std::span<const Vid> window,
                                            Vid first_target,
                                            std::uint32_t n_targets,
                                            const ScrConfig& cfg);

struct ReshapeResult {
  std::vector<std::uint64_t> pointers;  // length n+1
  CycleCount cycles = 0;
};

// Pointer-array construction from a sorted COO by the dual-counter walk:
// each cycle a window of w_scr elements and n_scr consecutive targets are
// active; a target completes when a strictly larger dst becomes visible (or
// the input ends), and elements belonging to active targets are consumed.
ReshapeResult reshape(const SortedCoo& s, const ScrConfig& cfg);

struct LookupResult {
  Vid new_vid = 0;
  bool hit = false;
  CycleCount cycles = 0;
};

// Segment-scan of the mapping store: ceil(map size / (n_scr * w_scr)) cycles,
// minimum 1. A miss appends v and assigns the counter value as its new VID.
LookupResult reindex_lookup(ReindexMap& m, Vid v, const ScrConfig& cfg);

struct ReindexResult {
  std::vector<Vid> renumbered;
  ReindexMap map;
  CycleCount cycles = 0;
};

ReindexResult reindex_stream(std::span<const Vid> vids, const ScrConfig& cfg);

}  // namespace agnn
