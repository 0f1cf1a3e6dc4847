#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agnn/pipeline.hpp"
#include "agnn/scr.hpp"
#include "agnn/upe.hpp"

namespace agnn {

// Workload shape the planner scores: graph size plus sampling parameters.
struct WorkloadParams {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint32_t layers = 1;
  std::uint32_t fanout = 10;
  std::uint64_t batch = 1;
};

// Edge ordering: m = log2(e / w_upe) - 1 merge rounds (clamped at 0), each
// moving e elements through n_upe UPEs at w_upe/2 per cycle per pair.
CycleCount cost_ordering(const WorkloadParams& p, const UpeConfig& c);

// Unique random selection: s = b * k^(l+1) - 1 selections, one per UPE per
// cycle. Throws std::overflow_error if s does not fit 64 bits.
CycleCount cost_selecting(const WorkloadParams& p, const UpeConfig& c);
std::uint64_t selection_work(const WorkloadParams& p);  // s itself

// Data reshaping: max(n / n_scr, e / w_scr).
CycleCount cost_reshaping(const WorkloadParams& p, const ScrConfig& c);

struct CostEstimate {
  CycleCount ordering = 0;
  CycleCount selecting = 0;
  CycleCount reshaping = 0;
  CycleCount subgraph_ordering = 0;
  CycleCount subgraph_reshaping = 0;
  double clock_hz = kDefaultClockHz;

  CycleCount total() const {
    return ordering + selecting + reshaping + subgraph_ordering +
           subgraph_reshaping;
  }
  double seconds() const { return total() / clock_hz; }
  double milliseconds() const { return seconds() * 1e3; }
};

// End-to-end estimate: full-graph conversion once, plus selection, plus the
// sampled-subgraph conversion with e' bounded by min(e, b*k^(l+1)).
CostEstimate estimate_total(const WorkloadParams& p, const UpeConfig& upe,
                            const ScrConfig& scr,
                            double clock_hz = kDefaultClockHz);

// Pre-compiled hardware variants: within each family, successive entries
// halve the width and double the instance count, so count*width stays at the
// family's lane capacity.
struct VariantCatalog {
  std::vector<UpeConfig> upe_variants;
  std::vector<ScrConfig> scr_variants;

  std::string to_json() const;
};

constexpr std::uint64_t kDefaultUpeCapacity = 16384;
constexpr std::uint64_t kDefaultScrCapacity = 4096;
constexpr std::uint32_t kCatalogVariants = 10;

VariantCatalog generate_catalog(std::uint64_t upe_capacity = kDefaultUpeCapacity,
                                std::uint64_t scr_capacity = kDefaultScrCapacity,
                                std::uint32_t variants = kCatalogVariants);

struct ConfigSelection {
  UpeConfig upe;
  ScrConfig scr;
  CycleCount cycles = 0;
};

// Exhaustive scoring of every UPE x SCR pair; ties break toward the larger
// instance count (UPE first, then SCR).
ConfigSelection select_config(const WorkloadParams& p,
                              const VariantCatalog& cat,
                              double clock_hz = kDefaultClockHz);

struct ReconfigPolicy {
  double full_penalty_ms = 230.0;  // 3 ms bitstream load + 225 ms programming
  double load_ms = 3.0;
  double program_ms = 225.0;
  double upe_area_share = 0.7;  // fixed 70:30 region split
  double scr_area_share = 0.3;
  std::uint64_t amortization_horizon = 1;  // upcoming preprocessing runs

  // Reprogramming a single region roughly halves the penalty.
  double penalty_ms(bool upe_changes, bool scr_changes) const;
};

struct ReconfigDecision {
  bool reconfigure = false;
  double penalty_ms = 0.0;
  double saving_ms_per_run = 0.0;
};

// Reconfigure iff the per-run saving, amortized over the policy horizon,
// exceeds the reconfiguration penalty.
ReconfigDecision reconfig_decision(const UpeConfig& cur_upe,
                                   const ScrConfig& cur_scr,
                                   const UpeConfig& cand_upe,
                                   const ScrConfig& cand_scr,
                                   const WorkloadParams& p,
                                   const ReconfigPolicy& pol,
                                   double clock_hz = kDefaultClockHz);

}  // namespace agnn
