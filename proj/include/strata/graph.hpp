#pragma once

#include <algorithm>
#include <compare>
#include <climits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "strata/errors.hpp"

namespace strata {

/// Label of a leg. Ordinary markings are positive integers; the two special
/// legs created by the invariance operator are `Marking::i()` and
/// `Marking::j()`, which order after every ordinary marking.
class Marking {
 public:
  constexpr Marking() = default;
  constexpr explicit Marking(int label) : label_(label) {}

  static constexpr Marking i() { return Marking(INT_MAX - 1); }
  static constexpr Marking j() { return Marking(INT_MAX); }

  constexpr int label() const { return label_; }
  constexpr bool is_special() const { return label_ >= INT_MAX - 1; }
  constexpr bool is_ordinary() const { return label_ > 0 && !is_special(); }

  std::string to_string() const {
    if (*this == i()) return "i";
    if (*this == j()) return "j";
    return std::to_string(label_);
  }

  constexpr auto operator<=>(const Marking&) const = default;

 private:
  int label_ = 0;
};

struct Vertex {
  int genus = 0;
  /// κ-monomial κ_{l_1}···κ_{l_p}, kept sorted ascending; indices are >= 1.
  std::vector<int> kappa;

  auto operator<=>(const Vertex&) const = default;
};

struct Leg {
  int vertex = 0;
  Marking marking;
  int psi = 0;

  auto operator<=>(const Leg&) const = default;
};

struct HalfEdge {
  int vertex = 0;
  int psi = 0;

  auto operator<=>(const HalfEdge&) const = default;
};

/// A node of the curve: two half-edges, possibly on the same vertex (self-loop).
struct Edge {
  HalfEdge a;
  HalfEdge b;

  bool is_loop() const { return a.vertex == b.vertex; }
  auto operator<=>(const Edge&) const = default;
};

/// Dual graph of a stable curve together with its κ/ψ decorations.
///
/// A bare dual graph is the same value with every decoration zero; see
/// `DualGraph` below.
struct DecoratedGraph {
  std::vector<Vertex> vertices;
  std::vector<Leg> legs;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  /// Legs plus edge endpoints at `v`; a self-loop counts twice.
  int valence(int v) const {
    int val = 0;
    for (const auto& leg : legs) val += leg.vertex == v;
    for (const auto& e : edges) val += (e.a.vertex == v) + (e.b.vertex == v);
    return val;
  }

  std::set<Marking> markings() const {
    std::set<Marking> out;
    for (const auto& leg : legs) out.insert(leg.marking);
    return out;
  }

  /// Index into `legs` of the leg carrying `m`, or -1.
  int find_leg(Marking m) const {
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (legs[k].marking == m) return static_cast<int>(k);
    return -1;
  }

  /// #edges + Σψ + Σκ-indices.
  int degree() const {
    int d = edge_count();
    for (const auto& v : vertices) d += std::accumulate(v.kappa.begin(), v.kappa.end(), 0);
    for (const auto& leg : legs) d += leg.psi;
    for (const auto& e : edges) d += e.a.psi + e.b.psi;
    return d;
  }

  bool is_interior() const { return vertices.size() == 1 && edges.empty(); }

  bool operator==(const DecoratedGraph&) const = default;
};

using DualGraph = DecoratedGraph;

/// Single vertex of genus `g` with legs 1..n, all undecorated.
inline DecoratedGraph smooth_graph(int g, int n) {
  DecoratedGraph out;
  out.vertices.push_back({g, {}});
  for (int m = 1; m <= n; ++m) out.legs.push_back({0, Marking(m), 0});
  return out;
}

// ---------------------------------------------------------------------------
// Validation

enum class Violation {
  UnstableVertex,
  DanglingHalfEdge,
  DuplicateMarking,
  InvalidMarking,
  NegativeGenus,
  InvalidKappa,
  NegativePsi,
};

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::UnstableVertex: return "unstable vertex";
    case Violation::DanglingHalfEdge: return "dangling half-edge";
    case Violation::DuplicateMarking: return "duplicate marking";
    case Violation::InvalidMarking: return "invalid marking";
    case Violation::NegativeGenus: return "negative genus";
    case Violation::InvalidKappa: return "invalid kappa index";
    case Violation::NegativePsi: return "negative psi exponent";
  }
  return "unknown";
}

struct Diagnostic {
  Violation kind;
  std::string detail;
};

struct ValidationResult {
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
  explicit operator bool() const { return ok(); }
  bool has(Violation v) const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [v](const Diagnostic& d) { return d.kind == v; });
  }
  std::string message() const {
    std::string out;
    for (const auto& d : diagnostics) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(d.kind)) + ": " + d.detail;
    }
    return out;
  }
};

inline ValidationResult validate(const DecoratedGraph& g) {
  ValidationResult r;
  auto add = [&r](Violation v, std::string detail) { r.diagnostics.push_back({v, std::move(detail)}); };
  const int nv = g.vertex_count();
  auto in_range = [nv](int v) { return v >= 0 && v < nv; };

  for (int v = 0; v < nv; ++v) {
    if (g.vertices[v].genus < 0) add(Violation::NegativeGenus, "vertex " + std::to_string(v));
    for (int k : g.vertices[v].kappa)
      if (k < 1) add(Violation::InvalidKappa, "kappa_" + std::to_string(k) + " on vertex " + std::to_string(v));
  }

  std::set<Marking> seen;
  for (const auto& leg : g.legs) {
    if (!in_range(leg.vertex))
      add(Violation::DanglingHalfEdge, "leg " + leg.marking.to_string() + " on missing vertex " + std::to_string(leg.vertex));
    if (!leg.marking.is_ordinary() && !leg.marking.is_special())
      add(Violation::InvalidMarking, "marking " + std::to_string(leg.marking.label()));
    if (!seen.insert(leg.marking).second) add(Violation::DuplicateMarking, "marking " + leg.marking.to_string());
    if (leg.psi < 0) add(Violation::NegativePsi, "leg " + leg.marking.to_string());
  }

  bool dangling = false;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    if (!in_range(e.a.vertex) || !in_range(e.b.vertex)) {
      add(Violation::DanglingHalfEdge, "edge " + std::to_string(k) + " references a missing vertex");
      dangling = true;
    }
    if (e.a.psi < 0 || e.b.psi < 0) add(Violation::NegativePsi, "edge " + std::to_string(k));
  }

  if (!dangling) {
    for (int v = 0; v < nv; ++v) {
      const int stability = 2 * g.vertices[v].genus - 2 + g.valence(v);
      if (stability <= 0)
        add(Violation::UnstableVertex, "vertex " + std::to_string(v) + " has 2g-2+n = " + std::to_string(stability));
    }
  }
  return r;
}

inline void require_valid(const DecoratedGraph& g) {
  if (auto r = validate(g); !r) throw InvalidInput(r.message());
}

// ---------------------------------------------------------------------------
// Topology

/// Σ genus(v) + #edges − #vertices + 1, for connected and disconnected graphs alike.
inline int arithmetic_genus(const DualGraph& g) {
  int total = 0;
  for (const auto& v : g.vertices) total += v.genus;
  return total + g.edge_count() - g.vertex_count() + 1;
}

/// Component id per vertex, numbered in order of first appearance.
inline std::vector<int> component_labels(const DualGraph& g) {
  std::vector<int> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.a.vertex)] = find(e.b.vertex);
  std::vector<int> label(g.vertices.size(), -1), root_label(g.vertices.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    int r = find(static_cast<int>(v));
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

inline int component_count(const DualGraph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

}  // namespace strata
