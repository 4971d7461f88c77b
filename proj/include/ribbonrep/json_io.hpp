#pragma once

// JSON bindings: the graph file format, CycNum serialization and the matrix
// dump used by the CLI.

#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"
#include "ribbonrep/cyclotomic.hpp"
#include "ribbonrep/ribbon_graph.hpp"

namespace ribbonrep {

using Json = nlohmann::json;

// Coefficients that fit in 64 bits are emitted as numbers, larger ones as
// decimal strings.
inline Json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json cyc_to_json(const CycNum& x) {
  Json num = Json::array();
  for (const auto& c : x.numerator_coeffs()) num.push_back(int_to_json(c));
  return Json{{"num", num}, {"den", int_to_json(x.denominator())}};
}

// Graph file format:
// {"k": 2,
//  "vertices": [{"id": 1, "half_edges": [5, 3, 1]}, ...],
//  "edges":    [{"id": 1, "half_edges": [1, 2]}, ...],
//  "boundary_colors": {"1": 2, ...}}
// Vertex half_edges lists are in counterclockwise ribbon order.
inline RibbonGraph parse_graph(const std::string& text,
                               std::optional<int> level_override = {}) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
  try {
    int k = level_override.value_or(j.at("k").get<int>());
    std::vector<RibbonGraph::Vertex> vertices;
    for (const auto& v : j.at("vertices")) {
      RibbonGraph::Vertex vx;
      vx.id = v.at("id").get<int>();
      for (const auto& h : v.at("half_edges")) vx.half_edges.push_back(h.get<int>());
      vertices.push_back(std::move(vx));
    }
    std::vector<RibbonGraph::Edge> edges;
    for (const auto& e : j.at("edges")) {
      RibbonGraph::Edge ed;
      ed.id = e.at("id").get<int>();
      const auto& hs = e.at("half_edges");
      if (hs.size() != 2)
        throw ParseError("edge " + std::to_string(ed.id) +
                         " needs exactly two half-edges");
      ed.half_edges = {hs[0].get<int>(), hs[1].get<int>()};
      edges.push_back(ed);
    }
    std::map<int, int> colors;
    if (j.contains("boundary_colors"))
      for (const auto& [key, val] : j.at("boundary_colors").items())
        colors[std::stoi(key)] = val.get<int>();
    return RibbonGraph(k, std::move(vertices), std::move(edges),
                       std::move(colors));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
}

inline RibbonGraph load_graph_file(const std::string& path,
                                   std::optional<int> level_override = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_graph(text, level_override);
}

}  // namespace ribbonrep
