#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lspace/bitset.hpp"
#include "lspace/errors.hpp"
#include "lspace/family.hpp"
#include "lspace/graph.hpp"

namespace lspace {

// Ordered JSON keeps object keys in insertion order, which together
// with canonical set ordering makes every emitted document
// byte-deterministic.
using Json = nlohmann::ordered_json;

// Input schema: {"vertices": [string...],
//                "edges": [{"src": s, "dst": s, "label": s}...]}.
// Exact keys; anything unknown is rejected to catch fixture typos.
inline GraphSpec graph_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("graph JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "vertices" && key != "edges")
      throw InputError("unknown key in graph JSON: " + key);
  }
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InputError("graph JSON needs a \"vertices\" array");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw InputError("graph JSON needs an \"edges\" array");

  GraphSpec spec;
  for (const Json& v : j["vertices"]) {
    if (!v.is_string()) throw InputError("vertex ids must be strings");
    spec.vertices.push_back(v.get<std::string>());
  }
  for (const Json& e : j["edges"]) {
    if (!e.is_object()) throw InputError("edges must be objects");
    for (const auto& [key, value] : e.items()) {
      (void)value;
      if (key != "src" && key != "dst" && key != "label")
        throw InputError("unknown key in edge: " + key);
    }
    for (const char* key : {"src", "dst", "label"})
      if (!e.contains(key) || !e[key].is_string())
        throw InputError(std::string("edge needs a string \"") + key + "\"");
    spec.edges.push_back({e["src"].get<std::string>(),
                          e["dst"].get<std::string>(),
                          e["label"].get<std::string>()});
  }
  return spec;
}

inline GraphSpec parse_graph_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("invalid JSON");
  return graph_from_json(j);
}

inline GraphSpec load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str());
}

inline Json graph_to_json(const GraphSpec& spec) {
  Json j;
  j["vertices"] = spec.vertices;
  j["edges"] = Json::array();
  for (const auto& e : spec.edges)
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
  return j;
}

// A vertex set as a list of vertex ids, in vertex order.
inline Json set_to_json(const LabelledGraph& g, const Bitset& set) {
  Json out = Json::array();
  for (int v = set.find_first(); v != -1; v = set.find_next(v))
    out.push_back(g.vertex_name(v));
  return out;
}

inline Json family_to_json(const LabelledGraph& g, const SetFamily& fam) {
  Json out = Json::array();
  for (const Bitset& s : fam.sets()) out.push_back(set_to_json(g, s));
  return out;
}

// A subfamily mask as the list of its member sets, canonical order.
inline Json subfamily_to_json(const LabelledGraph& g, const SetFamily& fam,
                              const Bitset& mask) {
  Json out = Json::array();
  for (int i = mask.find_first(); i != -1; i = mask.find_next(i))
    out.push_back(set_to_json(g, fam[i]));
  return out;
}

}  // namespace lspace
