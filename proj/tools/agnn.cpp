// agnn: GNN-preprocessing toolkit CLI.
//
// Subcommands: convert, preprocess, plan, replay, stats, gen.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "agnn/cost_model.hpp"
#include "agnn/graph.hpp"
#include "agnn/pipeline.hpp"
#include "agnn/scenario.hpp"

namespace {

using namespace agnn;

struct CommonFlags {
  std::string format = "text";
  std::string edge_order = "src-dst";
  UpeConfig upe;
  ScrConfig scr;
  double clock_hz = kDefaultClockHz;

  GraphFormat graph_format() const {
    if (format == "text") return GraphFormat::text_edge_list;
    if (format == "binary") return GraphFormat::binary_coo;
    throw CLI::ValidationError("--format must be text or binary");
  }
  EdgeOrder order() const {
    if (edge_order == "src-dst") return EdgeOrder::src_dst;
    if (edge_order == "dst-src") return EdgeOrder::dst_src;
    throw CLI::ValidationError("--edge-order must be src-dst or dst-src");
  }
};

void add_graph_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "input graph format: text|binary");
  cmd->add_option("--edge-order", f.edge_order,
                  "column order of text edge lists: src-dst|dst-src");
}

void add_config_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--n-upe", f.upe.count, "UPE instance count");
  cmd->add_option("--w-upe", f.upe.width, "UPE width (elements per cycle)");
  cmd->add_option("--n-scr", f.scr.count, "SCR slot count");
  cmd->add_option("--w-scr", f.scr.width, "SCR comparator lanes per slot");
  cmd->add_option("--clock-hz", f.clock_hz, "simulated clock frequency");
}

std::vector<Vid> parse_batch(const std::string& spec) {
  std::vector<Vid> batch;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    batch.push_back(Vid(std::stoul(tok)));
  return batch;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"AutoGNN-style GNN preprocessing simulator and planner"};
  app.require_subcommand(1);

  // convert --------------------------------------------------------------
  CommonFlags cv;
  std::string cv_in, cv_out;
  auto* convert_cmd =
      app.add_subcommand("convert", "COO -> CSC conversion (ordering + reshaping)");
  convert_cmd->add_option("input", cv_in)->required();
  convert_cmd->add_option("output", cv_out)->required();
  add_graph_flags(convert_cmd, cv);
  add_config_flags(convert_cmd, cv);

  // preprocess -----------------------------------------------------------
  CommonFlags pp;
  std::string pp_in, pp_out, pp_batch, pp_mode = "node", pp_report,
              pp_report_csv, pp_map;
  std::uint32_t pp_k = 10, pp_layers = 1;
  std::uint64_t pp_batch_count = 0;
  std::optional<std::uint64_t> pp_seed;
  bool pp_strict = false;
  auto* pre_cmd = app.add_subcommand(
      "preprocess", "end-to-end preprocessing: convert, sample, reindex");
  pre_cmd->add_option("input", pp_in)->required();
  pre_cmd->add_option("output", pp_out, "subgraph CSC output path")->required();
  add_graph_flags(pre_cmd, pp);
  add_config_flags(pre_cmd, pp);
  pre_cmd->add_option("--k", pp_k, "fanout per hop/layer");
  pre_cmd->add_option("--layers", pp_layers, "sampling depth");
  pre_cmd->add_option("--batch", pp_batch, "comma-separated batch VIDs");
  pre_cmd->add_option("--batch-count", pp_batch_count,
                      "draw this many random batch nodes instead");
  pre_cmd->add_option("--mode", pp_mode, "sampling mode: node|layer");
  pre_cmd->add_option("--seed", pp_seed, "RNG seed");
  pre_cmd->add_option("--report", pp_report, "write report JSON here");
  pre_cmd->add_option("--report-csv", pp_report_csv, "write report CSV here");
  pre_cmd->add_option("--map", pp_map,
                      "vid map JSON path (default: <output>.map.json)");
  pre_cmd->add_flag("--strict", pp_strict, "require an explicit --seed");

  // plan -----------------------------------------------------------------
  CommonFlags pl;
  std::string pl_in, pl_csv;
  std::uint64_t pl_n = 0, pl_e = 0, pl_b = 1;
  std::uint32_t pl_k = 10, pl_layers = 1;
  std::uint64_t pl_cap_upe = kDefaultUpeCapacity, pl_cap_scr = kDefaultScrCapacity;
  std::uint32_t pl_catalog_size = kCatalogVariants;
  auto* plan_cmd =
      app.add_subcommand("plan", "score the variant catalog for a workload");
  plan_cmd->add_option("--input", pl_in, "graph file to take n,e from");
  add_graph_flags(plan_cmd, pl);
  plan_cmd->add_option("--nodes", pl_n, "node count (alternative to --input)");
  plan_cmd->add_option("--edges", pl_e, "edge count (alternative to --input)");
  plan_cmd->add_option("--k", pl_k);
  plan_cmd->add_option("--layers", pl_layers);
  plan_cmd->add_option("--batch-count", pl_b, "batch size");
  plan_cmd->add_option("--catalog-upe-capacity", pl_cap_upe);
  plan_cmd->add_option("--catalog-scr-capacity", pl_cap_scr);
  plan_cmd->add_option("--catalog-size", pl_catalog_size, "variants per family");
  plan_cmd->add_option("--clock-hz", pl.clock_hz);
  plan_cmd->add_option("--csv", pl_csv, "write the scoring table here instead of stdout");

  // replay ---------------------------------------------------------------
  std::string rp_scenario, rp_csv;
  std::uint64_t rp_horizon = 1;
  std::uint64_t rp_cap_upe = kDefaultUpeCapacity, rp_cap_scr = kDefaultScrCapacity;
  double rp_clock = kDefaultClockHz;
  auto* replay_cmd =
      app.add_subcommand("replay", "replay a dynamic scenario script");
  replay_cmd->add_option("scenario", rp_scenario)->required();
  replay_cmd->add_option("--csv", rp_csv, "write the time series here");
  replay_cmd->add_option("--horizon", rp_horizon, "amortization horizon (runs)");
  replay_cmd->add_option("--catalog-upe-capacity", rp_cap_upe);
  replay_cmd->add_option("--catalog-scr-capacity", rp_cap_scr);
  replay_cmd->add_option("--clock-hz", rp_clock);

  // stats ----------------------------------------------------------------
  CommonFlags st;
  std::string st_in;
  auto* stats_cmd = app.add_subcommand("stats", "degree statistics of a graph");
  stats_cmd->add_option("input", st_in)->required();
  add_graph_flags(stats_cmd, st);

  // gen ------------------------------------------------------------------
  CommonFlags gn;
  std::string gn_out;
  std::uint64_t gn_n = 0, gn_e = 0, gn_seed = 0;
  bool gn_regular = false;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic graph");
  gen_cmd->add_option("output", gn_out)->required();
  gen_cmd->add_option("--nodes", gn_n)->required();
  gen_cmd->add_option("--edges", gn_e)->required();
  gen_cmd->add_option("--seed", gn_seed);
  gen_cmd->add_flag("--regular", gn_regular,
                    "equal in-degree per node (requires edges % nodes == 0)");
  add_graph_flags(gen_cmd, gn);

  CLI11_PARSE(app, argc, argv);

  if (*convert_cmd) {
    EdgeArrayCoo g = load_graph(cv_in, cv.graph_format(), cv.order());
    ConvertResult r = convert(g, cv.upe, cv.scr);
    save_csc(r.csc, cv_out);
    nlohmann::ordered_json j;
    j["nodes"] = g.node_count;
    j["edges"] = g.edge_count();
    j["cycles"] = {{"ordering_sort", r.sort_cycles},
                   {"ordering_merge", r.merge_cycles},
                   {"reshaping", r.reshape_cycles}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  if (*pre_cmd) {
    if (pp_strict && !pp_seed)
      throw std::runtime_error("--strict requires an explicit --seed");
    std::uint64_t seed = pp_seed.value_or(0);
    EdgeArrayCoo g = load_graph(pp_in, pp.graph_format(), pp.order());
    SamplingParams params;
    params.fanout = pp_k;
    params.layers = pp_layers;
    params.mode =
        pp_mode == "layer" ? SamplingMode::layer_wise : SamplingMode::node_wise;
    if (!pp_batch.empty()) {
      params.batch_nodes = parse_batch(pp_batch);
    } else if (pp_batch_count > 0) {
      std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
      for (std::uint64_t i = 0; i < pp_batch_count; ++i)
        params.batch_nodes.push_back(Vid(rng() % g.node_count));
    } else {
      throw std::runtime_error("need --batch or --batch-count");
    }
    PreprocessResult r =
        preprocess(g, params, pp.upe, pp.scr, seed, pp.clock_hz);
    save_csc(r.subgraph.csc, pp_out);
    std::string map_path = pp_map.empty() ? pp_out + ".map.json" : pp_map;
    write_file(map_path, r.subgraph.vid_map_json());
    if (!pp_report.empty()) write_file(pp_report, r.report.to_json());
    if (!pp_report_csv.empty())
      write_file(pp_report_csv, PreprocessReport::csv_header() + "\n" +
                                    r.report.to_csv_row() + "\n");
    std::cout << r.report.to_json() << '\n';
    return 0;
  }

  if (*plan_cmd) {
    WorkloadParams w;
    if (!pl_in.empty()) {
      EdgeArrayCoo g = load_graph(pl_in, pl.graph_format(), pl.order());
      w.nodes = g.node_count;
      w.edges = g.edge_count();
    } else {
      w.nodes = pl_n;
      w.edges = pl_e;
    }
    if (w.nodes == 0 || w.edges == 0)
      throw std::runtime_error("plan needs --input or --nodes/--edges");
    w.layers = pl_layers;
    w.fanout = pl_k;
    w.batch = pl_b;
    VariantCatalog cat =
        generate_catalog(pl_cap_upe, pl_cap_scr, pl_catalog_size);
    ConfigSelection best = select_config(w, cat, pl.clock_hz);
    std::cout << "# best upe=" << best.upe.count << "x" << best.upe.width
              << " scr=" << best.scr.count << "x" << best.scr.width
              << " cycles=" << best.cycles << '\n';
    std::ostringstream csv;
    csv << "n_upe,w_upe,n_scr,w_scr,ordering,selecting,reshaping,"
           "subgraph_ordering,subgraph_reshaping,total_cycles,estimated_ms\n";
    for (const UpeConfig& u : cat.upe_variants)
      for (const ScrConfig& s : cat.scr_variants) {
        CostEstimate est = estimate_total(w, u, s, pl.clock_hz);
        csv << u.count << ',' << u.width << ',' << s.count << ',' << s.width
            << ',' << est.ordering << ',' << est.selecting << ','
            << est.reshaping << ',' << est.subgraph_ordering << ','
            << est.subgraph_reshaping << ',' << est.total() << ','
            << est.milliseconds() << '\n';
      }
    if (pl_csv.empty())
      std::cout << csv.str();
    else
      write_file(pl_csv, csv.str());
    return 0;
  }

  if (*replay_cmd) {
    ReplayOptions opt;
    opt.catalog = generate_catalog(rp_cap_upe, rp_cap_scr);
    opt.policy.amortization_horizon = rp_horizon;
    opt.clock_hz = rp_clock;
    ReplayResult r = replay(parse_scenario(rp_scenario), opt);
    if (rp_csv.empty())
      std::cout << r.to_csv();
    else
      write_file(rp_csv, r.to_csv());
    return 0;
  }

  if (*stats_cmd) {
    EdgeArrayCoo g = load_graph(st_in, st.graph_format(), st.order());
    DegreeStats s = degree_stats(g);
    nlohmann::ordered_json j;
    j["nodes"] = g.node_count;
    j["edges"] = g.edge_count();
    j["mean_degree"] = s.mean_degree;
    j["max_degree"] = s.max_degree;
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  if (*gen_cmd) {
    if (gn_n == 0) throw std::runtime_error("--nodes must be > 0");
    if (gn_regular && gn_e % gn_n != 0)
      throw std::runtime_error("--regular requires edges % nodes == 0");
    EdgeArrayCoo g;
    g.node_count = gn_n;
    std::mt19937_64 rng(gn_seed);
    if (gn_regular) {
      std::uint64_t deg = gn_e / gn_n;
      for (std::uint64_t d = 0; d < gn_n; ++d)
        for (std::uint64_t i = 0; i < deg; ++i)
          g.edges.push_back({Vid(d), Vid(rng() % gn_n)});
    } else {
      for (std::uint64_t i = 0; i < gn_e; ++i)
        g.edges.push_back({Vid(rng() % gn_n), Vid(rng() % gn_n)});
    }
    save_graph(g, gn_out, gn.graph_format(), gn.order());
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
