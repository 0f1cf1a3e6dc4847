#include "agnn/scr.hpp"

#include <algorithm>
#include <stdexcept>

#include "agnn/kernels.hpp"

namespace agnn {

void ScrConfig::validate() const {
  if (count < 1) throw std::invalid_argument("SCR slot count must be >= 1");
  if (width < 1 || !std::has_single_bit(width))
    throw std::invalid_argument("SCR width must be a power of two >= 1");
}

std::vector<std::uint64_t> scr_count_window(std::span<const Vid> window,
                                            Vid first_target,
                                            std::uint32_t n_targets,
                                            const ScrConfig& cfg) {
  cfg.validate();
  if (window.size() > cfg.width)
    throw std::invalid_argument("window exceeds SCR width");
  if (n_targets > cfg.count)
    throw std::invalid_argument("target count exceeds SCR slot count");
  if (!std::is_sorted(window.begin(), window.end()))
    throw std::invalid_argument("scr_count_window: window not sorted");
  std::vector<std::uint64_t> counts(n_targets);
  for (std::uint32_t i = 0; i < n_targets; ++i) {
    std::uint64_t t = std::uint64_t(first_target) + i;
    counts[i] = kernels::set_count_ge(window, t) -
                kernels::set_count_ge(window, t + 1);
  }
  return counts;
}

ReshapeResult reshape(const SortedCoo& s, const ScrConfig& cfg) {
  cfg.validate();
  const auto& edges = s.graph.edges;
  const std::uint64_t n = s.graph.node_count;
  const std::uint64_t e = edges.size();
  if (!std::is_sorted(edges.begin(), edges.end(),
                      [](const Edge& a, const Edge& b) {
                        return std::pair(a.dst, a.src) < std::pair(b.dst, b.src);
                      }))
    throw std::invalid_argument("reshape: edge array not sorted by (dst,src)");

  ReshapeResult r;
  r.pointers.assign(n + 1, 0);
  std::uint64_t epos = 0;  // next unconsumed element
  std::uint64_t v = 0;     // first incomplete target
  while (v < n || epos < e) {
    const std::uint64_t wend = std::min(epos + cfg.width, e);
    const std::uint64_t tend = std::min(v + cfg.count, n);
    // Elements belonging to the active targets are counted and consumed.
    std::uint64_t consumed = epos;
    while (consumed < wend && edges[consumed].dst < tend) {
      r.pointers[edges[consumed].dst + 1]++;
      ++consumed;
    }
    // A target completes once a strictly larger dst (or the input end) is
    // visible in the window.
    if (wend == e) {
      v = tend;
    } else {
      std::uint64_t max_dst = edges[wend - 1].dst;
      v = std::max(v, std::min(tend, max_dst));
    }
    epos = consumed;
    r.cycles++;
  }
  for (std::uint64_t d = 0; d < n; ++d) r.pointers[d + 1] += r.pointers[d];
  return r;
}

LookupResult reindex_lookup(ReindexMap& m, Vid v, const ScrConfig& cfg) {
  cfg.validate();
  LookupResult r;
  const std::uint64_t lanes = std::uint64_t(cfg.count) * cfg.width;
  r.cycles = std::max<std::uint64_t>(1, (m.originals.size() + lanes - 1) / lanes);
  auto it = m.position.find(v);
  if (it != m.position.end()) {
    r.new_vid = it->second;
    r.hit = true;
    return r;
  }
  r.new_vid = static_cast<Vid>(m.next_counter());
  m.position.emplace(v, r.new_vid);
  m.originals.push_back(v);
  return r;
}

ReindexResult reindex_stream(std::span<const Vid> vids, const ScrConfig& cfg) {
  ReindexResult r;
  r.renumbered.reserve(vids.size());
  for (Vid v : vids) {
    LookupResult lu = reindex_lookup(r.map, v, cfg);
    r.renumbered.push_back(lu.new_vid);
    r.cycles += lu.cycles;
  }
  return r;
}

}  // namespace agnn
