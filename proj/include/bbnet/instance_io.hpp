#pragma once

// Canonical JSON instance file:
//
//   { "plane": [W, H], "lambda": L,
//     "hosts": [[x,y], ...], "backbones": [[x,y], ...],
//     "edges": [[j,k], ...] }
//
// Edges are written with j < k and sorted. Doubles use the shortest
// representation that parses back to the same value.

#include "bbnet/core.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace bbnet {

namespace detail {

inline std::string format_double(double v) {
  return nlohmann::json(v).dump();
}

inline double read_number(const nlohmann::json& node, const std::string& field) {
  if (!node.is_number()) throw ParseError(field + ": expected a number");
  return node.get<double>();
}

inline Point2 read_point(const nlohmann::json& node, const std::string& field) {
  if (!node.is_array() || node.size() != 2) throw ParseError(field + ": expected [x, y]");
  return {read_number(node[0], field + "[0]"), read_number(node[1], field + "[1]")};
}

inline std::vector<Point2> read_points(const nlohmann::json& doc, const std::string& field) {
  if (!doc.contains(field)) throw ParseError(field + ": missing field");
  const auto& arr = doc.at(field);
  if (!arr.is_array()) throw ParseError(field + ": expected an array");
  std::vector<Point2> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(read_point(arr[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::size_t read_index(const nlohmann::json& node, const std::string& field) {
  if (!node.is_number_integer()) throw ParseError(field + ": expected an integer index");
  if (node.is_number_unsigned()) return node.get<std::size_t>();
  const auto v = node.get<long long>();
  if (v < 0) throw ValidationError(field + ": negative backbone index");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Parses and validates an instance document.
inline NetworkInstance load_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");

  NetworkInstance inst;
  if (!doc.contains("plane")) throw ParseError("plane: missing field");
  const auto& plane = doc.at("plane");
  if (!plane.is_array() || plane.size() != 2) throw ParseError("plane: expected [width, height]");
  inst.plane = {detail::read_number(plane[0], "plane[0]"), detail::read_number(plane[1], "plane[1]")};

  if (!doc.contains("lambda")) throw ParseError("lambda: missing field");
  inst.lambda = detail::read_number(doc.at("lambda"), "lambda");

  inst.hosts = detail::read_points(doc, "hosts");
  inst.backbones = detail::read_points(doc, "backbones");

  if (!doc.contains("edges")) throw ParseError("edges: missing field");
  const auto& edges = doc.at("edges");
  if (!edges.is_array()) throw ParseError("edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(field + ": expected [j, k]");
    inst.edges.push_back({detail::read_index(e[0], field), detail::read_index(e[1], field)});
  }

  validate(inst);
  inst.edges = canonical_edges(std::move(inst.edges));
  return inst;
}

inline NetworkInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

inline std::string save_instance(const NetworkInstance& inst) {
  using detail::format_double;
  auto points = [](const std::vector<Point2>& pts) {
    std::string s = "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      s += (i ? ",\n    [" : "\n    [") + format_double(pts[i].x) + ", " + format_double(pts[i].y) + "]";
    }
    s += pts.empty() ? "]" : "\n  ]";
    return s;
  };

  std::string out = "{\n";
  out += "  \"plane\": [" + format_double(inst.plane.width) + ", " + format_double(inst.plane.height) + "],\n";
  out += "  \"lambda\": " + format_double(inst.lambda) + ",\n";
  out += "  \"hosts\": " + points(inst.hosts) + ",\n";
  out += "  \"backbones\": " + points(inst.backbones) + ",\n";
  out += "  \"edges\": [";
  const auto edges = canonical_edges(inst.edges);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out += (i ? ", [" : "[") + std::to_string(edges[i].a) + ", " + std::to_string(edges[i].b) + "]";
  }
  out += "]\n}\n";
  return out;
}

inline void save_instance_file(const NetworkInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << save_instance(inst);
}

}  // namespace bbnet
