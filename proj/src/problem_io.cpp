#include <cmath>
#include <cstdio>
#include <string>

#include "agmon/emit.hpp"
#include "agmon/graph.hpp"
#include "json.hpp"

namespace agmon {

namespace {

// Doubles that print without a decimal marker get ".0" appended so they parse
// back as reals ("-0" would otherwise come back as integer zero and lose its
// sign bit).
std::string real_literal(double x) {
  std::string s = fmt17(x);
  if (s.find_first_of(".eE") == std::string::npos && s != "inf" && s != "-inf" && s != "nan")
    s += ".0";
  return s;
}

int require_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(Errc::malformed_input, std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Problem parse_problem(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::malformed_input, e.what());
  }
  if (!doc.is_object()) fail(Errc::malformed_input, "top-level value must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "name" && k != "n" && k != "edges" && k != "potential")
      fail(Errc::malformed_input, "unknown key \"" + k + "\"");
  }
  if (!doc.contains("n")) fail(Errc::malformed_input, "missing \"n\"");
  if (!doc.contains("edges")) fail(Errc::malformed_input, "missing \"edges\"");
  if (!doc.contains("potential")) fail(Errc::malformed_input, "missing \"potential\"");

  Problem p;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(Errc::malformed_input, "\"name\" must be a string");
    p.name = doc["name"].get<std::string>();
  }
  const int n = require_int(doc["n"], "\"n\"");

  if (!doc["edges"].is_array()) fail(Errc::malformed_input, "\"edges\" must be an array");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2)
      fail(Errc::malformed_input, "each edge must be a pair [i, j]");
    int i = require_int(e[0], "edge endpoint");
    int j = require_int(e[1], "edge endpoint");
    if (i >= j)
      fail(Errc::malformed_input,
           "edges must satisfy i < j, got [" + std::to_string(i) + "," + std::to_string(j) + "]");
    edges.emplace_back(i, j);
  }

  if (!doc["potential"].is_array()) fail(Errc::malformed_input, "\"potential\" must be an array");
  for (const auto& x : doc["potential"]) {
    if (!x.is_number()) fail(Errc::malformed_input, "potential entries must be numbers");
    double v = x.get<double>();
    if (!std::isfinite(v)) fail(Errc::malformed_input, "potential entries must be finite");
    p.potential.push_back(v);
  }
  if (static_cast<int>(p.potential.size()) != n)
    fail(Errc::length_mismatch, "potential has " + std::to_string(p.potential.size()) +
                                    " entries for n=" + std::to_string(n));

  p.graph = build_graph(n, edges);  // validation errors propagate
  return p;
}

std::string serialize_problem(const Problem& p) {
  std::string out = "{";
  if (!p.name.empty()) out += "\"name\":\"" + json_escape(p.name) + "\",";
  out += "\"n\":" + std::to_string(p.graph.n) + ",\"edges\":[";
  bool first = true;
  for (auto [i, j] : p.graph.edge_list()) {
    if (!first) out += ",";
    first = false;
    out += "[" + std::to_string(i) + "," + std::to_string(j) + "]";
  }
  out += "],\"potential\":[";
  first = true;
  for (double w : p.potential) {
    if (!first) out += ",";
    first = false;
    out += real_literal(w);
  }
  out += "]}\n";
  return out;
}

}  // namespace agmon
