#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mmrelay/config.hpp"
#include "mmrelay/harness.hpp"

namespace mmrelay {

using Json = nlohmann::json;

inline std::string role_name(NodeRole role) {
  switch (role) {
    case NodeRole::source: return "source";
    case NodeRole::destination: return "destination";
    case NodeRole::relay: return "relay";
  }
  return "relay";
}

inline NodeRole role_from_name(const std::string& name) {
  if (name == "source") return NodeRole::source;
  if (name == "destination") return NodeRole::destination;
  if (name == "relay") return NodeRole::relay;
  throw ParseError("unknown node role: " + name);
}

inline Json channel_to_json(const ChannelParams& p) {
  return Json{{"a_los", p.a_los},       {"alpha_los", p.alpha_los},
              {"a_nlos", p.a_nlos},     {"alpha_nlos", p.alpha_nlos},
              {"m_t", p.m_t},           {"m_r", p.m_r},
              {"p_t_watts", p.p_t},     {"n0_watts", p.n0},
              {"bandwidth_hz", p.w}};
}

inline ChannelParams channel_from_json(const Json& j) {
  ChannelParams p;
  p.a_los = j.at("a_los");
  p.alpha_los = j.at("alpha_los");
  p.a_nlos = j.at("a_nlos");
  p.alpha_nlos = j.at("alpha_nlos");
  p.m_t = j.at("m_t");
  p.m_r = j.at("m_r");
  p.p_t = j.at("p_t_watts");
  p.n0 = j.at("n0_watts");
  p.w = j.at("bandwidth_hz");
  return p;
}

// Nodes carry id/role/pair/coordinates; the LOS relation is the sorted list
// of unordered pairs that are LOS.
inline Json instance_to_json(const Instance& inst) {
  Json nodes = Json::array();
  for (const Node& node : inst.nodes) {
    Json entry{{"id", node.id}, {"role", role_name(node.role)}, {"x", node.x}, {"y", node.y}};
    if (node.pair >= 0) {
      entry["pair"] = node.pair;
    } else {
      entry["pair"] = nullptr;
    }
    nodes.push_back(std::move(entry));
  }
  Json los = Json::array();
  for (int a = 0; a < inst.node_count(); ++a) {
    for (int b = a + 1; b < inst.node_count(); ++b) {
      if (inst.los(a, b)) los.push_back(Json::array({a, b}));
    }
  }
  return Json{{"seed", inst.seed},
              {"m", inst.m},
              {"n", inst.n},
              {"area", Json{{"width", inst.area.width}, {"height", inst.area.height}}},
              {"beta", inst.beta},
              {"params", channel_to_json(inst.params)},
              {"file_sizes_bits", inst.file_sizes},
              {"nodes", std::move(nodes)},
              {"los", std::move(los)}};
}

inline Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.seed = j.at("seed");
  inst.m = j.at("m");
  inst.n = j.at("n");
  inst.area.width = j.at("area").at("width");
  inst.area.height = j.at("area").at("height");
  inst.beta = j.at("beta");
  inst.params = channel_from_json(j.at("params"));
  inst.file_sizes = j.at("file_sizes_bits").get<std::vector<double>>();
  for (const Json& entry : j.at("nodes")) {
    Node node;
    node.id = entry.at("id");
    node.role = role_from_name(entry.at("role"));
    node.pair = entry.at("pair").is_null() ? -1 : entry.at("pair").get<int>();
    node.x = entry.at("x");
    node.y = entry.at("y");
    inst.nodes.push_back(node);
  }
  const int count = inst.node_count();
  if (static_cast<int>(inst.nodes.size()) != count) {
    throw ParseError("instance json: node count does not match m and n");
  }
  inst.los_matrix.assign(static_cast<std::size_t>(count) * count, 0);
  for (const Json& link : j.at("los")) {
    const int a = link.at(0);
    const int b = link.at(1);
    inst.los_matrix[static_cast<std::size_t>(a) * count + b] = 1;
    inst.los_matrix[static_cast<std::size_t>(b) * count + a] = 1;
  }
  return inst;
}

inline Json path_to_json(const Path& p) {
  return Json{{"pair", p.pair}, {"nodes", p.nodes}};
}

inline Path path_from_json(const Json& j) {
  Path p;
  p.pair = j.at("pair");
  p.nodes = j.at("nodes").get<std::vector<int>>();
  return p;
}

inline Json paths_to_json(const std::vector<Path>& paths) {
  Json out = Json::array();
  for (const Path& p : paths) out.push_back(path_to_json(p));
  return out;
}

inline std::vector<Path> paths_from_json(const Json& j) {
  std::vector<Path> out;
  for (const Json& entry : j) out.push_back(path_from_json(entry));
  return out;
}

inline Json record_to_json(const RunRecord& r) {
  return Json{
      {"seed", r.seed},
      {"direct",
       Json{{"delays_s", r.direct_delays}, {"sum_s", r.direct_sum},
            {"variance_s2", r.direct_variance}}},
      {"pf", Json{{"delays_s", r.pf_delays},
                  {"sum_s", r.pf_sum},
                  {"variance_s2", r.pf_variance},
                  {"rounds", r.pf_rounds},
                  {"converged", r.pf_converged},
                  {"paths", paths_to_json(r.pf_paths)}}},
      {"md", Json{{"delays_s", r.md_delays},
                  {"sum_s", r.md_sum},
                  {"variance_s2", r.md_variance},
                  {"rounds", r.md_rounds},
                  {"converged", r.md_converged},
                  {"paths", paths_to_json(r.md_paths)}}}};
}

inline RunRecord record_from_json(const Json& j) {
  RunRecord r;
  r.seed = j.at("seed");
  const Json& direct = j.at("direct");
  r.direct_delays = direct.at("delays_s").get<std::vector<double>>();
  r.direct_sum = direct.at("sum_s");
  r.direct_variance = direct.at("variance_s2");
  const Json& pf = j.at("pf");
  r.pf_delays = pf.at("delays_s").get<std::vector<double>>();
  r.pf_sum = pf.at("sum_s");
  r.pf_variance = pf.at("variance_s2");
  r.pf_rounds = pf.at("rounds");
  r.pf_converged = pf.at("converged");
  r.pf_paths = paths_from_json(pf.at("paths"));
  const Json& md = j.at("md");
  r.md_delays = md.at("delays_s").get<std::vector<double>>();
  r.md_sum = md.at("sum_s");
  r.md_variance = md.at("variance_s2");
  r.md_rounds = md.at("rounds");
  r.md_converged = md.at("converged");
  r.md_paths = paths_from_json(md.at("paths"));
  return r;
}

inline Json config_to_json(const SimConfig& c) {
  return Json{{"m", c.m},
              {"n", c.n},
              {"area", Json{{"width", c.area.width}, {"height", c.area.height}}},
              {"beta", c.beta},
              {"channel", channel_to_json(c.channel)},
              {"file_sizes_bits", resolved_file_sizes(c)},
              {"epsilon", c.epsilon},
              {"max_rounds", c.max_rounds},
              {"runs", c.runs},
              {"master_seed", c.master_seed}};
}

// Wall clock is reported separately from the reproducible fields so byte
// comparisons of summaries can drop it.
inline Json stats_to_json(const BatchStats& s) {
  return Json{{"runs", s.runs},
              {"mean_sum_s",
               Json{{"direct", s.mean_direct_sum}, {"pf", s.mean_pf_sum}, {"md", s.mean_md_sum}}},
              {"mean_variance_s2", Json{{"direct", s.mean_direct_variance},
                                        {"pf", s.mean_pf_variance},
                                        {"md", s.mean_md_variance}}},
              {"convergence_rate",
               Json{{"pf", s.pf_convergence_rate}, {"md", s.md_convergence_rate}}},
              {"wall_clock_per_run_s", s.wall_clock_per_run_s}};
}

// Self-contained single-run report: everything a renderer or replay needs.
inline Json simulate_output_to_json(const Instance& inst, const RunRecord& record) {
  return Json{{"instance", instance_to_json(inst)}, {"record", record_to_json(record)}};
}

inline Json trace_to_json(const TraceRecord& t) {
  return Json{{"round", t.round},         {"relay", t.relay},
              {"greedy", t.greedy.target}, {"taken", t.taken.target},
              {"mutated", t.mutated},     {"dphi", t.potential_delta}};
}

}  // namespace mmrelay
