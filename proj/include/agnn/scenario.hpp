#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "agnn/cost_model.hpp"

namespace agnn {

// One line of a scenario script. See the README for the text schema.
struct ScenarioStep {
  enum class Kind {
    load_graph,      // load <handle> <path> [format=..] [order=..]
    declare,         // workload <handle> n=.. e=..
    apply_delta,     // delta <handle> edges=.. nodes=.. seed=..  | file=..
    run,             // run <handle> k=.. layers=.. batch=..
    plan,            // plan <handle> k=.. layers=.. batch=..
    assert_config,   // assert-config upe=<count>x<width> scr=<count>x<width>
  };
  Kind kind;
  std::string handle;
  std::filesystem::path path;
  GraphFormat format = GraphFormat::text_edge_list;
  EdgeOrder order = EdgeOrder::src_dst;
  std::uint64_t n = 0, e = 0;
  std::uint64_t delta_edges = 0, delta_nodes = 0, seed = 0;
  std::uint32_t fanout = 10, layers = 1;
  std::uint64_t batch = 1;
  std::optional<UpeConfig> expect_upe;
  std::optional<ScrConfig> expect_scr;
  std::size_t line = 0;
};

struct ScenarioScript {
  std::vector<ScenarioStep> steps;
};

ScenarioScript parse_scenario(const std::filesystem::path& path);
ScenarioScript parse_scenario_text(const std::string& text);

struct ReplayOptions {
  VariantCatalog catalog = generate_catalog();
  ReconfigPolicy policy;
  double clock_hz = kDefaultClockHz;
  // Dynamic policy re-plans only when e or mean degree drifts by more than
  // this fraction since the last planning.
  double drift_threshold = 0.10;
};

// One row per `run` step, static and dynamic policies side by side.
struct ReplayRow {
  std::size_t step = 0;
  std::string handle;
  std::uint64_t nodes = 0, edges = 0;
  UpeConfig static_upe;
  ScrConfig static_scr;
  CycleCount static_cycles = 0;
  double static_ms = 0.0, static_cum_ms = 0.0;
  UpeConfig dyn_upe;
  ScrConfig dyn_scr;
  bool reconfigured = false;
  double dyn_penalty_ms = 0.0;
  CycleCount dyn_cycles = 0;
  double dyn_ms = 0.0, dyn_cum_ms = 0.0;
};

struct ReplayResult {
  std::vector<ReplayRow> rows;

  static std::string csv_header();
  std::string to_csv() const;
};

// Executes the script: the static policy keeps the configuration chosen at
// the first run; the dynamic policy re-plans on workload drift and pays the
// reconfiguration penalty when the switch amortizes. Run costs come from the
// analytic model.
ReplayResult replay(const ScenarioScript& script, const ReplayOptions& opt);

}  // namespace agnn
