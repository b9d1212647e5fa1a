#pragma once

#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "strata/errors.hpp"
#include "strata/graph.hpp"
#include "strata/pushforward.hpp"
#include "strata/rational.hpp"
#include "strata/taut_class.hpp"

// JSON forms of graphs, classes and interior classes. Coefficients are
// reduced fraction strings; edge-endpoint slots are numbered per vertex in
// edge order on output and only checked for uniqueness on input.

namespace strata::io {

using nlohmann::json;

inline json marking_to_json(Marking m) {
  if (m.is_special()) return m.to_string();
  return m.label();
}

inline Marking marking_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "i") return Marking::i();
    if (s == "j") return Marking::j();
    throw InvalidInput("marking string must be \"i\" or \"j\", got \"" + s + "\"");
  }
  if (!j.is_number_integer()) throw InvalidInput("marking must be an integer or \"i\"/\"j\"");
  const int v = j.get<int>();
  if (v < 1) throw InvalidInput("marking labels must be positive, got " + std::to_string(v));
  return Marking(v);
}

inline json to_json(const DecoratedGraph& g) {
  json out;
  out["vertices"] = json::array();
  for (const auto& v : g.vertices) out["vertices"].push_back({{"genus", v.genus}, {"kappa", v.kappa}});
  out["legs"] = json::array();
  for (const auto& leg : g.legs)
    out["legs"].push_back({{"vertex", leg.vertex}, {"marking", marking_to_json(leg.marking)}, {"psi", leg.psi}});
  out["edges"] = json::array();
  std::map<int, int> next_slot;
  for (const auto& e : g.edges) {
    const int sa = next_slot[e.a.vertex]++;
    const int sb = next_slot[e.b.vertex]++;
    out["edges"].push_back({{"ends", {{e.a.vertex, sa}, {e.b.vertex, sb}}}, {"psi", {e.a.psi, e.b.psi}}});
  }
  return out;
}

namespace detail {

inline int get_int(const json& obj, const char* key, int fallback, bool required) {
  if (!obj.is_object()) throw InvalidInput(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw InvalidInput(std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!it->is_number_integer()) throw InvalidInput(std::string("field '") + key + "' must be an integer");
  return it->get<int>();
}

inline const json& get_array(const json& obj, const char* key, bool required) {
  static const json empty = json::array();
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw InvalidInput(std::string("missing field '") + key + "'");
    return empty;
  }
  if (!it->is_array()) throw InvalidInput(std::string("field '") + key + "' must be an array");
  return *it;
}

}  // namespace detail

/// Parses and validates a graph. Structural problems throw InvalidInput;
/// invariant violations throw InvalidInput naming each violated invariant.
inline DecoratedGraph graph_from_json(const json& j, bool check = true) {
  if (!j.is_object()) throw InvalidInput("graph must be a JSON object");
  DecoratedGraph g;
  for (const auto& v : detail::get_array(j, "vertices", true)) {
    Vertex vert;
    vert.genus = detail::get_int(v, "genus", 0, true);
    for (const auto& k : detail::get_array(v, "kappa", false)) {
      if (!k.is_number_integer()) throw InvalidInput("kappa entries must be integers");
      vert.kappa.push_back(k.get<int>());
    }
    std::sort(vert.kappa.begin(), vert.kappa.end());
    g.vertices.push_back(std::move(vert));
  }
  for (const auto& l : detail::get_array(j, "legs", false)) {
    Leg leg;
    leg.vertex = detail::get_int(l, "vertex", 0, true);
    if (!l.contains("marking")) throw InvalidInput("leg without 'marking'");
    leg.marking = marking_from_json(l.at("marking"));
    leg.psi = detail::get_int(l, "psi", 0, false);
    g.legs.push_back(leg);
  }
  std::set<std::pair<int, int>> slots;
  for (const auto& e : detail::get_array(j, "edges", false)) {
    const auto& ends = detail::get_array(e, "ends", true);
    if (ends.size() != 2) throw InvalidInput("edge 'ends' must list two half-edges");
    std::array<HalfEdge, 2> he{};
    for (int s = 0; s < 2; ++s) {
      const auto& end = ends[s];
      if (!end.is_array() || end.size() != 2 || !end[0].is_number_integer() || !end[1].is_number_integer())
        throw InvalidInput("edge end must be [VERTEX, SLOT]");
      he[s].vertex = end[0].get<int>();
      if (!slots.emplace(he[s].vertex, end[1].get<int>()).second)
        throw InvalidInput("duplicate half-edge slot [" + std::to_string(he[s].vertex) + "," +
                           std::to_string(end[1].get<int>()) + "]");
    }
    const auto& psi = detail::get_array(e, "psi", false);
    if (!psi.empty()) {
      if (psi.size() != 2 || !psi[0].is_number_integer() || !psi[1].is_number_integer())
        throw InvalidInput("edge 'psi' must be two integers");
      he[0].psi = psi[0].get<int>();
      he[1].psi = psi[1].get<int>();
    }
    g.edges.push_back({he[0], he[1]});
  }
  if (check) require_valid(g);
  return g;
}

inline json to_json(const AmbientSignature& a) {
  json markings = json::array();
  for (auto m : a.markings) markings.push_back(marking_to_json(m));
  return {{"genus", a.genus}, {"markings", markings}, {"max_components", a.max_components}};
}

inline AmbientSignature ambient_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("ambient must be a JSON object");
  AmbientSignature a;
  a.genus = detail::get_int(j, "genus", 0, true);
  for (const auto& m : detail::get_array(j, "markings", true))
    if (!a.markings.insert(marking_from_json(m)).second) throw InvalidInput("duplicate marking in ambient");
  a.max_components = detail::get_int(j, "max_components", 1, false);
  if (a.max_components != 1 && a.max_components != 2) throw InvalidInput("max_components must be 1 or 2");
  return a;
}

inline json to_json(const TautClass& x) {
  json terms = json::array();
  for (const auto& [form, term] : x.terms()) terms.push_back({{"coeff", to_string(term.coeff)}, {"graph", to_json(term.graph)}});
  return {{"ambient", to_json(x.ambient())}, {"terms", terms}};
}

inline Rational coeff_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InvalidInput("coefficient must be a \"P/Q\" string");
}

inline TautClass class_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("class must be a JSON object");
  if (!j.contains("ambient")) throw InvalidInput("missing field 'ambient'");
  TautClass x(ambient_from_json(j.at("ambient")));
  std::size_t index = 0;
  for (const auto& t : detail::get_array(j, "terms", true)) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("graph"))
      throw InvalidInput("term " + std::to_string(index) + " needs 'coeff' and 'graph'");
    const auto g = graph_from_json(t.at("graph"));
    try {
      x.add_term(g, coeff_from_json(t.at("coeff")));
    } catch (const InvalidInput& e) {
      throw InvalidInput("term " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  return x;
}

inline json to_json(const InteriorMonomial& m) {
  json psi = json::object();
  for (const auto& [mark, e] : m.psi) psi[std::to_string(mark)] = e;
  return {{"kappa", m.kappa}, {"psi", psi}};
}

inline json to_json(const InteriorClass& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) {
    json t = to_json(m);
    t["coeff"] = to_string(c);
    terms.push_back(std::move(t));
  }
  return {{"g", x.genus()}, {"n", x.markings()}, {"terms", terms}};
}

inline InteriorMonomial monomial_from_json(const json& t) {
  InteriorMonomial m;
  for (const auto& k : detail::get_array(t, "kappa", false)) {
    if (!k.is_number_integer()) throw InvalidInput("kappa entries must be integers");
    m.kappa.push_back(k.get<int>());
  }
  if (auto it = t.find("psi"); it != t.end()) {
    if (!it->is_object()) throw InvalidInput("'psi' must map marking strings to exponents");
    for (const auto& [key, val] : it->items()) {
      int mark = 0;
      try {
        std::size_t used = 0;
        mark = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw InvalidInput("psi key '" + key + "' is not a marking number");
      }
      if (!val.is_number_integer() || val.get<int>() < 0) throw InvalidInput("psi exponent must be a non-negative integer");
      m.psi[mark] = val.get<int>();
    }
  }
  m.normalize();
  return m;
}

inline InteriorClass interior_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("interior class must be a JSON object");
  InteriorClass x(detail::get_int(j, "g", 0, true), detail::get_int(j, "n", 0, true));
  for (const auto& t : detail::get_array(j, "terms", true)) {
    if (!t.is_object() || !t.contains("coeff")) throw InvalidInput("interior term needs 'coeff'");
    x.add(monomial_from_json(t), coeff_from_json(t.at("coeff")));
  }
  return x;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace strata::io
