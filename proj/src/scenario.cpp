#include "agnn/scenario.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace agnn {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw std::runtime_error("scenario line " + std::to_string(line) + ": " +
                           msg);
}

std::uint64_t parse_u64(const std::string& s, std::size_t line) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    fail(line, "expected an unsigned integer, got '" + s + "'");
  }
}

// "<count>x<width>"
std::pair<std::uint32_t, std::uint32_t> parse_shape(const std::string& s,
                                                    std::size_t line) {
  auto x = s.find('x');
  if (x == std::string::npos) fail(line, "expected <count>x<width>: '" + s + "'");
  return {std::uint32_t(parse_u64(s.substr(0, x), line)),
          std::uint32_t(parse_u64(s.substr(x + 1), line))};
}

}  // namespace

ScenarioScript parse_scenario_text(const std::string& text) {
  ScenarioScript script;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;

    ScenarioStep step;
    step.line = lineno;
    std::map<std::string, std::string> kv;
    auto rest_kv = [&] {
      std::string tok;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
          fail(lineno, "expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
    };
    auto sampling_kv = [&] {
      if (kv.count("k")) step.fanout = std::uint32_t(parse_u64(kv["k"], lineno));
      if (kv.count("layers"))
        step.layers = std::uint32_t(parse_u64(kv["layers"], lineno));
      if (kv.count("batch")) step.batch = parse_u64(kv["batch"], lineno);
    };

    if (word == "load") {
      step.kind = ScenarioStep::Kind::load_graph;
      std::string path;
      if (!(ls >> step.handle >> path)) fail(lineno, "load needs <handle> <path>");
      step.path = path;
      rest_kv();
      if (kv.count("format"))
        step.format = kv["format"] == "binary" ? GraphFormat::binary_coo
                                               : GraphFormat::text_edge_list;
      if (kv.count("order"))
        step.order = kv["order"] == "dst-src" ? EdgeOrder::dst_src
                                              : EdgeOrder::src_dst;
    } else if (word == "workload") {
      step.kind = ScenarioStep::Kind::declare;
      if (!(ls >> step.handle)) fail(lineno, "workload needs <handle>");
      rest_kv();
      if (!kv.count("n") || !kv.count("e"))
        fail(lineno, "workload needs n= and e=");
      step.n = parse_u64(kv["n"], lineno);
      step.e = parse_u64(kv["e"], lineno);
    } else if (word == "delta") {
      step.kind = ScenarioStep::Kind::apply_delta;
      if (!(ls >> step.handle)) fail(lineno, "delta needs <handle>");
      rest_kv();
      if (kv.count("file")) {
        step.path = kv["file"];
      } else {
        if (!kv.count("edges")) fail(lineno, "delta needs edges= (or file=)");
        step.delta_edges = parse_u64(kv["edges"], lineno);
        if (kv.count("nodes")) step.delta_nodes = parse_u64(kv["nodes"], lineno);
        if (kv.count("seed")) step.seed = parse_u64(kv["seed"], lineno);
      }
    } else if (word == "run" || word == "plan") {
      step.kind = word == "run" ? ScenarioStep::Kind::run
                                : ScenarioStep::Kind::plan;
      if (!(ls >> step.handle)) fail(lineno, word + " needs <handle>");
      rest_kv();
      sampling_kv();
    } else if (word == "assert-config") {
      step.kind = ScenarioStep::Kind::assert_config;
      rest_kv();
      if (kv.count("upe")) {
        auto [c, w] = parse_shape(kv["upe"], lineno);
        step.expect_upe = UpeConfig{c, w};
      }
      if (kv.count("scr")) {
        auto [c, w] = parse_shape(kv["scr"], lineno);
        step.expect_scr = ScrConfig{c, w};
      }
      if (!step.expect_upe && !step.expect_scr)
        fail(lineno, "assert-config needs upe= and/or scr=");
    } else {
      fail(lineno, "unknown step '" + word + "'");
    }
    script.steps.push_back(std::move(step));
  }
  return script;
}

ScenarioScript parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open scenario '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string ReplayResult::csv_header() {
  return "step,handle,nodes,edges,"
         "static_config,static_cycles,static_ms,static_cum_ms,"
         "dyn_config,reconfigured,dyn_penalty_ms,dyn_cycles,dyn_ms,dyn_cum_ms";
}

std::string ReplayResult::to_csv() const {
  std::ostringstream out;
  out << csv_header() << '\n';
  auto cfg = [](std::uint32_t c, std::uint32_t w) {
    return std::to_string(c) + "x" + std::to_string(w);
  };
  for (const ReplayRow& r : rows) {
    out << r.step << ',' << r.handle << ',' << r.nodes << ',' << r.edges << ','
        << cfg(r.static_upe.count, r.static_upe.width) << '|'
        << cfg(r.static_scr.count, r.static_scr.width) << ','
        << r.static_cycles << ',' << r.static_ms << ',' << r.static_cum_ms
        << ',' << cfg(r.dyn_upe.count, r.dyn_upe.width) << '|'
        << cfg(r.dyn_scr.count, r.dyn_scr.width) << ','
        << (r.reconfigured ? 1 : 0) << ',' << r.dyn_penalty_ms << ','
        << r.dyn_cycles << ',' << r.dyn_ms << ',' << r.dyn_cum_ms << '\n';
  }
  return out.str();
}

namespace {

struct Handle {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::optional<EdgeArrayCoo> graph;  // present for loaded graphs
};

EdgeDelta random_delta(const Handle& h, std::uint64_t edges,
                       std::uint64_t nodes, std::uint64_t seed) {
  EdgeDelta d;
  d.added_node_count = nodes;
  std::mt19937_64 rng(seed);
  const std::uint64_t range = h.nodes + nodes;
  for (std::uint64_t i = 0; i < edges; ++i)
    d.added_edges.push_back({Vid(rng() % range), Vid(rng() % range)});
  return d;
}

}  // namespace

ReplayResult replay(const ScenarioScript& script, const ReplayOptions& opt) {
  ReplayResult result;
  std::map<std::string, Handle> handles;
  std::optional<UpeConfig> static_upe, dyn_upe;
  std::optional<ScrConfig> static_scr, dyn_scr;
  double last_planned_e = 0, last_planned_deg = 0;
  double static_cum = 0, dyn_cum = 0;

  auto get = [&](const ScenarioStep& s) -> Handle& {
    auto it = handles.find(s.handle);
    if (it == handles.end()) fail(s.line, "unknown handle '" + s.handle + "'");
    return it->second;
  };
  auto workload_of = [&](const ScenarioStep& s, const Handle& h) {
    WorkloadParams w;
    w.nodes = h.nodes;
    w.edges = h.edges;
    w.layers = s.layers;
    w.fanout = s.fanout;
    w.batch = s.batch;
    return w;
  };
  auto drifted = [&](const WorkloadParams& w) {
    if (last_planned_e == 0) return true;
    double deg = w.nodes ? double(w.edges) / w.nodes : 0;
    return std::abs(double(w.edges) - last_planned_e) / last_planned_e >
               opt.drift_threshold ||
           (last_planned_deg > 0 &&
            std::abs(deg - last_planned_deg) / last_planned_deg >
                opt.drift_threshold);
  };
  auto evaluate = [&](const ScenarioStep& s, const WorkloadParams& w,
                      ReplayRow* row) {
    if (!dyn_upe) {
      // First planning: both policies start on the same configuration,
      // programmed before the scenario's timeline starts.
      ConfigSelection sel = select_config(w, opt.catalog, opt.clock_hz);
      static_upe = dyn_upe = sel.upe;
      static_scr = dyn_scr = sel.scr;
    } else if (drifted(w)) {
      ConfigSelection cand = select_config(w, opt.catalog, opt.clock_hz);
      ReconfigDecision d =
          reconfig_decision(*dyn_upe, *dyn_scr, cand.upe, cand.scr, w,
                            opt.policy, opt.clock_hz);
      if (d.reconfigure) {
        dyn_upe = cand.upe;
        dyn_scr = cand.scr;
        if (row) {
          row->reconfigured = true;
          row->dyn_penalty_ms = d.penalty_ms;
        }
        dyn_cum += d.penalty_ms;
      }
    }
    last_planned_e = double(w.edges);
    last_planned_deg = w.nodes ? double(w.edges) / w.nodes : 0;
  };

  std::size_t step_idx = 0;
  for (const ScenarioStep& s : script.steps) {
    ++step_idx;
    switch (s.kind) {
      case ScenarioStep::Kind::load_graph: {
        Handle h;
        h.graph = load_graph(s.path, s.format, s.order);
        h.nodes = h.graph->node_count;
        h.edges = h.graph->edge_count();
        handles[s.handle] = std::move(h);
        break;
      }
      case ScenarioStep::Kind::declare: {
        Handle h;
        h.nodes = s.n;
        h.edges = s.e;
        handles[s.handle] = std::move(h);
        break;
      }
      case ScenarioStep::Kind::apply_delta: {
        Handle& h = get(s);
        if (!s.path.empty()) {
          EdgeArrayCoo d = load_graph(s.path, GraphFormat::binary_coo);
          if (!h.graph) fail(s.line, "file delta requires a loaded graph");
          EdgeDelta delta{d.edges, d.node_count > h.nodes ? d.node_count - h.nodes
                                                          : 0};
          *h.graph = apply_edge_updates(*h.graph, delta);
          h.nodes = h.graph->node_count;
          h.edges = h.graph->edge_count();
        } else if (h.graph) {
          *h.graph = apply_edge_updates(
              *h.graph, random_delta(h, s.delta_edges, s.delta_nodes, s.seed));
          h.nodes = h.graph->node_count;
          h.edges = h.graph->edge_count();
        } else {
          h.nodes += s.delta_nodes;
          h.edges += s.delta_edges;
        }
        break;
      }
      case ScenarioStep::Kind::run: {
        Handle& h = get(s);
        WorkloadParams w = workload_of(s, h);
        ReplayRow row;
        row.step = step_idx;
        row.handle = s.handle;
        row.nodes = w.nodes;
        row.edges = w.edges;
        evaluate(s, w, &row);
        row.static_upe = *static_upe;
        row.static_scr = *static_scr;
        row.dyn_upe = *dyn_upe;
        row.dyn_scr = *dyn_scr;
        CostEstimate se = estimate_total(w, *static_upe, *static_scr,
                                         opt.clock_hz);
        CostEstimate de = estimate_total(w, *dyn_upe, *dyn_scr, opt.clock_hz);
        row.static_cycles = se.total();
        row.static_ms = se.milliseconds();
        static_cum += row.static_ms;
        row.static_cum_ms = static_cum;
        row.dyn_cycles = de.total();
        row.dyn_ms = de.milliseconds();
        dyn_cum += row.dyn_ms;
        row.dyn_cum_ms = dyn_cum;
        result.rows.push_back(std::move(row));
        break;
      }
      case ScenarioStep::Kind::plan: {
        Handle& h = get(s);
        evaluate(s, workload_of(s, h), nullptr);
        break;
      }
      case ScenarioStep::Kind::assert_config: {
        if (!dyn_upe) fail(s.line, "assert-config before any planning");
        if (s.expect_upe && !(*s.expect_upe == *dyn_upe))
          fail(s.line, "UPE config mismatch: have " +
                           std::to_string(dyn_upe->count) + "x" +
                           std::to_string(dyn_upe->width));
        if (s.expect_scr && !(*s.expect_scr == *dyn_scr))
          fail(s.line, "SCR config mismatch: have " +
                           std::to_string(dyn_scr->count) + "x" +
                           std::to_string(dyn_scr->width));
        break;
      }
    }
  }
  return result;
}

}  // namespace agnn
