#include "agnn/cost_model.hpp"

#include <bit>
#include <stdexcept>

#include "json.hpp"

namespace agnn {
namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return (a + b - 1) / b;
}

}  // namespace

CycleCount cost_ordering(const WorkloadParams& p, const UpeConfig& c) {
  c.validate();
  if (p.edges == 0) return 0;
  const std::uint64_t chunks = ceil_div(p.edges, c.width);
  const unsigned m = chunks <= 2 ? 0 : ceil_log2(chunks) - 1;
  return ceil_div(2 * m * p.edges, std::uint64_t(c.count) * c.width);
}

std::uint64_t selection_work(const WorkloadParams& p) {
  // s = b * k^(l+1) - 1, overflow-checked.
  unsigned __int128 s = p.batch;
  for (std::uint32_t i = 0; i < p.layers + 1; ++i) {
    s *= p.fanout;
    if (s > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("selection work exceeds 64 bits");
  }
  return s == 0 ? 0 : std::uint64_t(s) - 1;
}

CycleCount cost_selecting(const WorkloadParams& p, const UpeConfig& c) {
  c.validate();
  return ceil_div(selection_work(p), c.count);
}

CycleCount cost_reshaping(const WorkloadParams& p, const ScrConfig& c) {
  c.validate();
  return std::max(ceil_div(p.nodes, c.count), ceil_div(p.edges, c.width));
}

CostEstimate estimate_total(const WorkloadParams& p, const UpeConfig& upe,
                            const ScrConfig& scr, double clock_hz) {
  CostEstimate est;
  est.clock_hz = clock_hz;
  est.ordering = cost_ordering(p, upe);
  est.selecting = cost_selecting(p, upe);
  est.reshaping = cost_reshaping(p, scr);
  // The true sampled size is seed-dependent; bound it by the full selection
  // tree and by the source graph itself.
  const std::uint64_t tree = selection_work(p) + 1;
  WorkloadParams sub;
  sub.edges = std::min(p.edges, tree);
  sub.nodes = std::min(p.nodes, p.batch + sub.edges);
  est.subgraph_ordering = cost_ordering(sub, upe);
  est.subgraph_reshaping = cost_reshaping(sub, scr);
  return est;
}

std::string VariantCatalog::to_json() const {
  nlohmann::ordered_json j;
  j["upe_variants"] = nlohmann::json::array();
  for (const UpeConfig& c : upe_variants)
    j["upe_variants"].push_back({{"count", c.count}, {"width", c.width}});
  j["scr_variants"] = nlohmann::json::array();
  for (const ScrConfig& c : scr_variants)
    j["scr_variants"].push_back({{"count", c.count}, {"width", c.width}});
  return j.dump(2);
}

VariantCatalog generate_catalog(std::uint64_t upe_capacity,
                                std::uint64_t scr_capacity,
                                std::uint32_t variants) {
  if (variants < 1) throw std::invalid_argument("need at least one variant");
  auto check = [&](std::uint64_t cap, const char* what) {
    if (!std::has_single_bit(cap) || cap < (1ull << (variants - 1)) * 2)
      throw std::invalid_argument(
          std::string(what) +
          " capacity too small for the requested halvings (need a power of "
          "two >= 2^" +
          std::to_string(variants) + ")");
  };
  check(upe_capacity, "UPE");
  check(scr_capacity, "SCR");
  VariantCatalog cat;
  for (std::uint32_t i = 0; i < variants; ++i) {
    cat.upe_variants.push_back(
        {std::uint32_t(1u << i), std::uint32_t(upe_capacity >> i)});
    cat.scr_variants.push_back(
        {std::uint32_t(1u << i), std::uint32_t(scr_capacity >> i)});
  }
  return cat;
}

ConfigSelection select_config(const WorkloadParams& p,
                              const VariantCatalog& cat, double clock_hz) {
  if (cat.upe_variants.empty() || cat.scr_variants.empty())
    throw std::invalid_argument("empty variant catalog");
  ConfigSelection best;
  bool first = true;
  for (const UpeConfig& u : cat.upe_variants)
    for (const ScrConfig& s : cat.scr_variants) {
      CycleCount cycles = estimate_total(p, u, s, clock_hz).total();
      bool better =
          first || cycles < best.cycles ||
          (cycles == best.cycles &&
           std::tuple(u.count, s.count) > std::tuple(best.upe.count,
                                                     best.scr.count));
      if (better) {
        best = {u, s, cycles};
        first = false;
      }
    }
  return best;
}

double ReconfigPolicy::penalty_ms(bool upe_changes, bool scr_changes) const {
  if (!upe_changes && !scr_changes) return 0.0;
  if (upe_changes && scr_changes) return full_penalty_ms;
  return full_penalty_ms / 2.0;
}

ReconfigDecision reconfig_decision(const UpeConfig& cur_upe,
                                   const ScrConfig& cur_scr,
                                   const UpeConfig& cand_upe,
                                   const ScrConfig& cand_scr,
                                   const WorkloadParams& p,
                                   const ReconfigPolicy& pol,
                                   double clock_hz) {
  ReconfigDecision d;
  const double cur_ms =
      estimate_total(p, cur_upe, cur_scr, clock_hz).milliseconds();
  const double cand_ms =
      estimate_total(p, cand_upe, cand_scr, clock_hz).milliseconds();
  d.saving_ms_per_run = cur_ms - cand_ms;
  d.penalty_ms =
      pol.penalty_ms(!(cand_upe == cur_upe), !(cand_scr == cur_scr));
  d.reconfigure = d.penalty_ms > 0.0 &&
                  d.saving_ms_per_run * pol.amortization_horizon > d.penalty_ms;
  if (!d.reconfigure) d.penalty_ms = 0.0;
  return d;
}

}  // namespace agnn
