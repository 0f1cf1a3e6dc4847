#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "agnn/graph.hpp"
#include "agnn/scr.hpp"
#include "agnn/upe.hpp"

namespace agnn {

enum class SamplingMode { node_wise, layer_wise };

struct SamplingParams {
  std::vector<Vid> batch_nodes;
  std::uint32_t fanout = 10;  // k per hop (node-wise) or per layer
  std::uint32_t layers = 1;
  SamplingMode mode = SamplingMode::node_wise;

  void validate(std::uint64_t node_count) const;
};

constexpr double kDefaultClockHz = 100e6;

// Per-stage simulated cycle counts plus the run's configuration and derived
// wall-time estimate.
struct PreprocessReport {
  CycleCount ordering_sort = 0;
  CycleCount ordering_merge = 0;
  CycleCount reshaping = 0;
  CycleCount selecting = 0;
  CycleCount reindexing = 0;
  CycleCount subgraph_ordering = 0;
  CycleCount subgraph_reshaping = 0;
  UpeConfig upe;
  ScrConfig scr;
  double clock_hz = kDefaultClockHz;
  double reconfig_penalty_ms = 0.0;
  std::uint64_t input_nodes = 0, input_edges = 0;
  std::uint64_t output_nodes = 0, output_edges = 0;

  CycleCount total_cycles() const;
  double estimated_seconds() const;

  std::string to_json() const;
  static PreprocessReport from_json(const std::string& text);
  static std::string csv_header();
  std::string to_csv_row() const;
};

struct SampledSubgraph {
  CscGraph csc;        // over renumbered VIDs
  ReindexMap vid_map;  // new VID -> original VID

  // Sidecar JSON map {new_vid: original_vid}.
  std::string vid_map_json() const;
};

struct SampleBatchResult {
  std::vector<Edge> edges;  // dst = sampled-from node, src = sampled parent
  CycleCount cycles = 0;
};

// Neighbor sampling over a CSC graph. Node-wise: a uni-random selection per
// frontier node per hop; duplicates survive into the next frontier.
// Layer-wise: the frontier's neighbor arrays are concatenated and a single
// selection of k is drawn per layer.
SampleBatchResult sample_batch(const CscGraph& csc, const SamplingParams& p,
                               std::uint64_t seed, const UpeConfig& upe);

struct ConvertResult {
  CscGraph csc;
  CycleCount sort_cycles = 0;
  CycleCount merge_cycles = 0;
  CycleCount reshape_cycles = 0;
};

// Conversion-only path: edge ordering + reshaping.
ConvertResult convert(const EdgeArrayCoo& g, const UpeConfig& upe,
                      const ScrConfig& scr);

struct PreprocessResult {
  SampledSubgraph subgraph;
  PreprocessReport report;
};

// End-to-end workflow: full-graph conversion, sampling, reindexing, and
// conversion of the renumbered sampled COO into the subgraph CSC.
PreprocessResult preprocess(const EdgeArrayCoo& g, const SamplingParams& p,
                            const UpeConfig& upe, const ScrConfig& scr,
                            std::uint64_t seed,
                            double clock_hz = kDefaultClockHz);

}  // namespace agnn
