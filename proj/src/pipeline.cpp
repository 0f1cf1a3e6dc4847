#include "agnn/pipeline.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace agnn {
namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
  return (a + b - 1) / b;
}

}  // namespace

void SamplingParams::validate(std::uint64_t node_count) const {
  if (fanout < 1) throw std::invalid_argument("fanout must be >= 1");
  if (layers < 1) throw std::invalid_argument("layers must be >= 1");
  std::vector<Vid> bad;
  for (Vid v : batch_nodes)
    if (v >= node_count) bad.push_back(v);
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "invalid batch VIDs:";
    for (Vid v : bad) msg << ' ' << v;
    throw std::invalid_argument(msg.str());
  }
}

CycleCount PreprocessReport::total_cycles() const {
  return ordering_sort + ordering_merge + reshaping + selecting + reindexing +
         subgraph_ordering + subgraph_reshaping;
}

double PreprocessReport::estimated_seconds() const {
  return total_cycles() / clock_hz + reconfig_penalty_ms / 1e3;
}

std::string PreprocessReport::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = {{"nodes", input_nodes}, {"edges", input_edges}};
  j["output"] = {{"nodes", output_nodes}, {"edges", output_edges}};
  j["config"] = {{"n_upe", upe.count},
                 {"w_upe", upe.width},
                 {"n_scr", scr.count},
                 {"w_scr", scr.width}};
  j["cycles"] = {{"ordering_sort", ordering_sort},
                 {"ordering_merge", ordering_merge},
                 {"reshaping", reshaping},
                 {"selecting", selecting},
                 {"reindexing", reindexing},
                 {"subgraph_ordering", subgraph_ordering},
                 {"subgraph_reshaping", subgraph_reshaping},
                 {"total", total_cycles()}};
  j["clock_hz"] = clock_hz;
  j["reconfig_penalty_ms"] = reconfig_penalty_ms;
  j["estimated_seconds"] = estimated_seconds();
  return j.dump(2);
}

PreprocessReport PreprocessReport::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PreprocessReport r;
  r.input_nodes = j["input"]["nodes"];
  r.input_edges = j["input"]["edges"];
  r.output_nodes = j["output"]["nodes"];
  r.output_edges = j["output"]["edges"];
  r.upe = {j["config"]["n_upe"], j["config"]["w_upe"]};
  r.scr = {j["config"]["n_scr"], j["config"]["w_scr"]};
  const auto& c = j["cycles"];
  r.ordering_sort = c["ordering_sort"];
  r.ordering_merge = c["ordering_merge"];
  r.reshaping = c["reshaping"];
  r.selecting = c["selecting"];
  r.reindexing = c["reindexing"];
  r.subgraph_ordering = c["subgraph_ordering"];
  r.subgraph_reshaping = c["subgraph_reshaping"];
  r.clock_hz = j["clock_hz"];
  r.reconfig_penalty_ms = j["reconfig_penalty_ms"];
  return r;
}

std::string PreprocessReport::csv_header() {
  return "input_nodes,input_edges,output_nodes,output_edges,"
         "n_upe,w_upe,n_scr,w_scr,"
         "ordering_sort,ordering_merge,reshaping,selecting,reindexing,"
         "subgraph_ordering,subgraph_reshaping,total_cycles,"
         "clock_hz,reconfig_penalty_ms,estimated_seconds";
}

std::string PreprocessReport::to_csv_row() const {
  std::ostringstream row;
  row << input_nodes << ',' << input_edges << ',' << output_nodes << ','
      << output_edges << ',' << upe.count << ',' << upe.width << ','
      << scr.count << ',' << scr.width << ',' << ordering_sort << ','
      << ordering_merge << ',' << reshaping << ',' << selecting << ','
      << reindexing << ',' << subgraph_ordering << ',' << subgraph_reshaping
      << ',' << total_cycles() << ',' << clock_hz << ','
      << reconfig_penalty_ms << ',' << estimated_seconds();
  return row.str();
}

std::string SampledSubgraph::vid_map_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < vid_map.originals.size(); ++i)
    j[std::to_string(i)] = vid_map.originals[i];
  return j.dump(2);
}

SampleBatchResult sample_batch(const CscGraph& csc, const SamplingParams& p,
                               std::uint64_t seed, const UpeConfig& upe) {
  upe.validate();
  SampleBatchResult r;
  std::mt19937_64 rng(seed);
  std::vector<Vid> frontier = p.batch_nodes;
  std::uint64_t selections = 0;
  for (std::uint32_t hop = 0; hop < p.layers; ++hop) {
    std::vector<Vid> next;
    if (p.mode == SamplingMode::node_wise) {
      for (Vid v : frontier) {
        SelectResult sel = uni_random_select(csc.neighbors(v), p.fanout, rng);
        selections += sel.cycles;
        for (Vid parent : sel.sampled) {
          r.edges.push_back({v, parent});
          next.push_back(parent);
        }
      }
    } else {
      // Aggregate every frontier neighbor array, then one selection of k.
      std::vector<Vid> pool;
      std::vector<Vid> owner;  // frontier node owning each pool position
      for (Vid v : frontier)
        for (Vid parent : csc.neighbors(v)) {
          pool.push_back(parent);
          owner.push_back(v);
        }
      // Select positions so each picked element keeps its owning dst.
      std::vector<Vid> posv(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i)
        posv[i] = static_cast<Vid>(i);
      SelectResult sel = uni_random_select(posv, p.fanout, rng);
      selections += sel.cycles;
      for (Vid pos : sel.sampled) {
        r.edges.push_back({owner[pos], pool[pos]});
        next.push_back(pool[pos]);
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  r.cycles = ceil_div(selections, upe.count);
  return r;
}

ConvertResult convert(const EdgeArrayCoo& g, const UpeConfig& upe,
                      const ScrConfig& scr) {
  ConvertResult r;
  OrderingResult ord = edge_ordering(g, upe);
  r.sort_cycles = ord.sort_cycles;
  r.merge_cycles = ord.merge_cycles;
  ReshapeResult rs = reshape(ord.sorted, scr);
  r.reshape_cycles = rs.cycles;
  r.csc.pointers = std::move(rs.pointers);
  r.csc.indices.reserve(ord.sorted.graph.edges.size());
  for (const Edge& e : ord.sorted.graph.edges) r.csc.indices.push_back(e.src);
  return r;
}

PreprocessResult preprocess(const EdgeArrayCoo& g, const SamplingParams& p,
                            const UpeConfig& upe, const ScrConfig& scr,
                            std::uint64_t seed, double clock_hz) {
  g.validate();
  p.validate(g.node_count);
  PreprocessResult out;
  PreprocessReport& rep = out.report;
  rep.upe = upe;
  rep.scr = scr;
  rep.clock_hz = clock_hz;
  rep.input_nodes = g.node_count;
  rep.input_edges = g.edge_count();

  // 1. Full-graph conversion.
  ConvertResult conv = convert(g, upe, scr);
  rep.ordering_sort = conv.sort_cycles;
  rep.ordering_merge = conv.merge_cycles;
  rep.reshaping = conv.reshape_cycles;

  // 2. Sampling over the CSC.
  SampleBatchResult sampled = sample_batch(conv.csc, p, seed, upe);
  rep.selecting = sampled.cycles;

  // 3. Reindexing: batch nodes first (in batch order), then edge endpoints.
  std::vector<Vid> stream;
  stream.reserve(p.batch_nodes.size() + 2 * sampled.edges.size());
  for (Vid v : p.batch_nodes) stream.push_back(v);
  for (const Edge& e : sampled.edges) {
    stream.push_back(e.dst);
    stream.push_back(e.src);
  }
  ReindexResult ri = reindex_stream(stream, scr);
  rep.reindexing = ri.cycles;

  EdgeArrayCoo sub_coo;
  sub_coo.node_count = ri.map.next_counter();
  sub_coo.edges.reserve(sampled.edges.size());
  std::size_t cursor = p.batch_nodes.size();
  for (std::size_t i = 0; i < sampled.edges.size(); ++i) {
    Vid d = ri.renumbered[cursor++];
    Vid s = ri.renumbered[cursor++];
    sub_coo.edges.push_back({d, s});
  }

  // 4. Subgraph conversion.
  ConvertResult sub = convert(sub_coo, upe, scr);
  rep.subgraph_ordering = sub.sort_cycles + sub.merge_cycles;
  rep.subgraph_reshaping = sub.reshape_cycles;
  rep.output_nodes = sub_coo.node_count;
  rep.output_edges = sub_coo.edge_count();

  out.subgraph.csc = std::move(sub.csc);
  out.subgraph.vid_map = std::move(ri.map);
  return out;
}

}  // namespace agnn
