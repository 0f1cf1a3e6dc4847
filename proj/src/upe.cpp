#include "agnn/upe.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "agnn/kernels.hpp"

namespace agnn {
namespace {

constexpr std::uint64_t kSentinel = std::numeric_limits<std::uint64_t>::max();

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return (a + b - 1) / b;
}

void check_sorted(std::span<const std::uint64_t> v, const char* what) {
  if (!std::is_sorted(v.begin(), v.end()))
    throw std::invalid_argument(std::string(what) + ": input not sorted");
}

}  // namespace

unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : std::bit_width(x - 1);
}

void UpeConfig::validate() const {
  if (count < 1) throw std::invalid_argument("UPE count must be >= 1");
  if (width < 2 || !std::has_single_bit(width))
    throw std::invalid_argument("UPE width must be a power of two >= 2");
}

ChunkSortResult upe_sort_chunk_bits(std::span<const std::uint64_t> chunk,
                                    std::span<const unsigned> bit_positions,
                                    const UpeConfig& cfg) {
  cfg.validate();
  if (chunk.size() > cfg.width)
    throw std::invalid_argument("chunk exceeds UPE width");
  ChunkSortResult r;
  r.keys.assign(chunk.begin(), chunk.end());
  kernels::ConditionArray bit_clear(chunk.size());
  for (unsigned pos : bit_positions) {
    for (std::size_t i = 0; i < r.keys.size(); ++i)
      bit_clear[i] = ((r.keys[i] >> pos) & 1u) == 0;
    auto [zeros, ones] = kernels::set_partition(r.keys, bit_clear);
    std::copy(ones.begin(), ones.end(),
              std::copy(zeros.begin(), zeros.end(), r.keys.begin()));
    r.cycles++;
  }
  return r;
}

ChunkSortResult upe_sort_chunk(std::span<const std::uint64_t> chunk,
                               unsigned key_bits, const UpeConfig& cfg) {
  if (key_bits < 1 || key_bits > 64)
    throw std::invalid_argument("key_bits must be in [1,64]");
  std::vector<unsigned> positions(key_bits);
  for (unsigned i = 0; i < key_bits; ++i) positions[i] = i;
  return upe_sort_chunk_bits(chunk, positions, cfg);
}

MergeResult upe_merge(std::span<const std::uint64_t> a,
                      std::span<const std::uint64_t> b, std::uint32_t width) {
  if (width < 2 || !std::has_single_bit(width))
    throw std::invalid_argument("merge width must be a power of two >= 2");
  check_sorted(a, "upe_merge");
  check_sorted(b, "upe_merge");
  MergeResult r;
  const std::size_t total = a.size() + b.size();
  if (total == 0) return r;
  const std::size_t half = width / 2;

  // Pad both sides to whole half-buffers with MAX sentinels.
  auto padded = [&](std::span<const std::uint64_t> s) {
    std::vector<std::uint64_t> p(s.begin(), s.end());
    p.resize(std::max<std::size_t>(half, ceil_div(p.size(), half) * half),
             kSentinel);
    return p;
  };
  std::vector<std::uint64_t> A = padded(a), B = padded(b);

  std::vector<std::uint64_t> buf(width), next(width), pad(half, kSentinel);
  std::copy(A.begin(), A.begin() + half, buf.begin());
  std::copy(B.begin(), B.begin() + half, buf.begin() + half);
  std::sort(buf.begin(), buf.end());
  std::size_t ai = half, bi = half;

  r.keys.reserve(total + half);
  while (r.keys.size() < total) {
    // Emit the lower half; the w/2 smallest unread elements live in buf.
    r.keys.insert(r.keys.end(), buf.begin(), buf.begin() + half);
    r.cycles++;
    if (r.keys.size() >= total) break;
    // Refill from the array whose head is smaller.
    std::uint64_t head_a = ai < A.size() ? A[ai] : kSentinel;
    std::uint64_t head_b = bi < B.size() ? B[bi] : kSentinel;
    const std::uint64_t* fill;
    if (head_a < head_b) {
      fill = ai < A.size() ? A.data() + ai : pad.data();
      if (ai < A.size()) ai += half;
    } else {
      fill = bi < B.size() ? B.data() + bi : pad.data();
      if (bi < B.size()) bi += half;
    }
    // Upper half of buf and the refill half are each sorted.
    std::merge(buf.begin() + half, buf.end(), fill, fill + half, next.begin());
    buf.swap(next);
  }
  r.keys.resize(total);  // strip sentinels
  return r;
}

OrderingResult edge_ordering(const EdgeArrayCoo& g, const UpeConfig& cfg,
                             std::optional<unsigned> key_bits) {
  cfg.validate();
  g.validate();
  OrderingResult r;
  r.sorted.graph.node_count = g.node_count;
  const std::uint64_t e = g.edge_count();
  if (e == 0) return r;

  const unsigned vid_bits = std::max(1u, ceil_log2(g.node_count));
  const unsigned kb = key_bits.value_or(2 * vid_bits);
  if (kb < 2 || kb > 64 || kb % 2 != 0)
    throw std::invalid_argument("key_bits must be even and in [2,64]");
  if (kb / 2 < vid_bits)
    throw std::invalid_argument("key_bits too small for the VID range");
  // src field in the low word, dst field at bit 32.
  std::vector<unsigned> positions;
  for (unsigned i = 0; i < kb / 2; ++i) positions.push_back(i);
  for (unsigned i = 0; i < kb / 2; ++i) positions.push_back(32 + i);

  std::vector<std::uint64_t> keys(e);
  for (std::uint64_t i = 0; i < e; ++i)
    keys[i] = (std::uint64_t(g.edges[i].dst) << 32) | g.edges[i].src;

  // Chunk radix sort, chunks handed round-robin to the first idle UPE.
  const std::uint64_t nchunks = ceil_div(e, cfg.width);
  std::vector<std::uint64_t> upe_free(cfg.count, 0);
  std::vector<std::vector<std::uint64_t>> runs;
  runs.reserve(nchunks);
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    std::uint64_t begin = c * cfg.width;
    std::uint64_t end = std::min<std::uint64_t>(begin + cfg.width, e);
    auto sorted = upe_sort_chunk_bits(
        std::span(keys).subspan(begin, end - begin), positions, cfg);
    auto slot = std::min_element(upe_free.begin(), upe_free.end());
    *slot += sorted.cycles;
    r.sort_cycles = std::max(r.sort_cycles, *slot);
    runs.push_back(std::move(sorted.keys));
  }

  // Pairwise merge rounds; the controller keeps every UPE busy each round,
  // and the first round's work is folded into chunk sorting for accounting.
  std::uint64_t rounds = 0;
  while (runs.size() > 1) {
    std::vector<std::vector<std::uint64_t>> merged;
    merged.reserve((runs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < runs.size(); i += 2)
      merged.push_back(upe_merge(runs[i], runs[i + 1], cfg.width).keys);
    if (runs.size() % 2) merged.push_back(std::move(runs.back()));
    runs.swap(merged);
    rounds++;
  }
  if (rounds > 1)
    r.merge_cycles =
        (rounds - 1) * ceil_div(2 * e, std::uint64_t(cfg.count) * cfg.width);

  r.sorted.graph.edges.resize(e);
  for (std::uint64_t i = 0; i < e; ++i)
    r.sorted.graph.edges[i] = {Vid(runs[0][i] >> 32),
                               Vid(runs[0][i] & 0xffffffffu)};
  return r;
}

SelectResult uni_random_select(std::span<const Vid> neighbors, std::size_t k,
                               std::mt19937_64& rng) {
  SelectResult r;
  const std::size_t deg = neighbors.size();
  const std::size_t m = std::min(k, deg);
  kernels::ConditionArray sampled_bitmap(deg, 0);
  std::size_t remaining = deg;
  for (std::size_t s = 0; s < m; ++s) {
    std::uint64_t draw = rng() % remaining;
    // Locate the draw-th unsampled index.
    std::size_t idx = 0;
    for (;; ++idx)
      if (!sampled_bitmap[idx] && draw-- == 0) break;
    sampled_bitmap[idx] = 1;
    remaining--;
    r.cycles++;  // one one-hot set-partition extraction per cycle
  }
  std::vector<std::uint64_t> values(neighbors.begin(), neighbors.end());
  auto [picked, rest] = kernels::set_partition(values, sampled_bitmap);
  r.sampled.assign(picked.begin(), picked.end());
  return r;
}

SelectResult uni_random_select(std::span<const Vid> neighbors, std::size_t k,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return uni_random_select(neighbors, k, rng);
}

}  // namespace agnn
