#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "strata/errors.hpp"
#include "strata/graph.hpp"

namespace strata {

/// Byte string identifying a decorated graph up to isomorphism. Ordered
/// lexicographically, so it can key sorted containers.
class CanonicalForm {
 public:
  CanonicalForm() = default;
  explicit CanonicalForm(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (auto b : bytes_) {
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xf]);
    }
    return out;
  }

  auto operator<=>(const CanonicalForm&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

struct Canonicalized {
  CanonicalForm form;
  /// The input relabeled into canonical vertex/leg/edge order.
  DecoratedGraph graph;
};

namespace detail {

using Key = std::vector<int>;

// Partition of the vertices into label-invariant color classes, refined by
// neighbourhood until stable. Colors are dense and ordered by invariant key.
inline std::vector<int> refined_colors(const DecoratedGraph& g) {
  const int nv = g.vertex_count();
  std::vector<Key> keys(nv);
  for (int v = 0; v < nv; ++v) {
    Key& k = keys[v];
    k.push_back(g.vertices[v].genus);
    k.push_back(g.valence(v));
    k.push_back(static_cast<int>(g.vertices[v].kappa.size()));
    k.insert(k.end(), g.vertices[v].kappa.begin(), g.vertices[v].kappa.end());
    std::vector<std::pair<int, int>> legs, loops;
    for (const auto& leg : g.legs)
      if (leg.vertex == v) legs.emplace_back(leg.marking.label(), leg.psi);
    for (const auto& e : g.edges)
      if (e.is_loop() && e.a.vertex == v) loops.emplace_back(std::min(e.a.psi, e.b.psi), std::max(e.a.psi, e.b.psi));
    std::sort(legs.begin(), legs.end());
    std::sort(loops.begin(), loops.end());
    k.push_back(static_cast<int>(legs.size()));
    for (auto [m, p] : legs) k.insert(k.end(), {m, p});
    k.push_back(static_cast<int>(loops.size()));
    for (auto [p, q] : loops) k.insert(k.end(), {p, q});
  }

  auto assign = [nv](const std::vector<Key>& ks) {
    std::vector<Key> sorted(ks);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> color(nv);
    for (int v = 0; v < nv; ++v)
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), ks[v]) - sorted.begin());
    return std::make_pair(color, static_cast<int>(sorted.size()));
  };

  auto [color, classes] = assign(keys);
  while (true) {
    std::vector<Key> next(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::array<int, 3>> nbrs;
      for (const auto& e : g.edges) {
        if (e.is_loop()) continue;
        if (e.a.vertex == v) nbrs.push_back({color[e.b.vertex], e.a.psi, e.b.psi});
        if (e.b.vertex == v) nbrs.push_back({color[e.a.vertex], e.b.psi, e.a.psi});
      }
      std::sort(nbrs.begin(), nbrs.end());
      next[v].push_back(color[v]);
      for (const auto& t : nbrs) next[v].insert(next[v].end(), t.begin(), t.end());
    }
    auto [c2, n2] = assign(next);
    if (n2 == classes) break;
    color = std::move(c2);
    classes = n2;
  }
  return color;
}

// Calls visit(order) for every vertex ordering that lists color classes in
// ascending color and permutes freely inside each class.
template <class Visit>
void for_each_cell_ordering(const std::vector<int>& color, Visit&& visit) {
  const int nv = static_cast<int>(color.size());
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&color](int a, int b) { return color[a] < color[b]; });
  std::vector<std::pair<int, int>> cells;  // [begin, end)
  for (int s = 0; s < nv;) {
    int e = s;
    while (e < nv && color[order[e]] == color[order[s]]) ++e;
    cells.emplace_back(s, e);
    s = e;
  }
  // Odometer over per-cell permutations.
  while (true) {
    visit(static_cast<const std::vector<int>&>(order));
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      auto [s, e] = cells[c];
      if (std::next_permutation(order.begin() + s, order.begin() + e)) break;
      // next_permutation wrapped the cell back to sorted order; carry.
    }
    if (c == cells.size()) return;
  }
}

inline void push_int(std::vector<std::uint8_t>& out, int x) {
  const auto u = static_cast<std::uint32_t>(x);
  out.push_back(static_cast<std::uint8_t>(u >> 24));
  out.push_back(static_cast<std::uint8_t>(u >> 16));
  out.push_back(static_cast<std::uint8_t>(u >> 8));
  out.push_back(static_cast<std::uint8_t>(u));
}

// Graph rewritten so that vertex order[p] becomes vertex p, with legs sorted
// by marking and edges sorted by (min pos, max pos, psi...). Loop half-edges
// are ordered by psi.
inline DecoratedGraph relabel(const DecoratedGraph& g, const std::vector<int>& order) {
  const int nv = g.vertex_count();
  std::vector<int> pos(nv);
  for (int p = 0; p < nv; ++p) pos[order[p]] = p;
  DecoratedGraph out;
  out.vertices.reserve(nv);
  for (int p = 0; p < nv; ++p) {
    out.vertices.push_back(g.vertices[order[p]]);
    std::sort(out.vertices.back().kappa.begin(), out.vertices.back().kappa.end());
  }
  for (const auto& leg : g.legs) out.legs.push_back({pos[leg.vertex], leg.marking, leg.psi});
  std::sort(out.legs.begin(), out.legs.end(),
            [](const Leg& x, const Leg& y) { return x.marking < y.marking; });
  for (const auto& e : g.edges) {
    HalfEdge a{pos[e.a.vertex], e.a.psi}, b{pos[e.b.vertex], e.b.psi};
    if (b < a) std::swap(a, b);
    out.edges.push_back({a, b});
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

inline std::vector<std::uint8_t> encode(const DecoratedGraph& r) {
  std::vector<std::uint8_t> out;
  push_int(out, r.vertex_count());
  push_int(out, static_cast<int>(r.legs.size()));
  push_int(out, r.edge_count());
  for (const auto& v : r.vertices) {
    push_int(out, v.genus);
    push_int(out, static_cast<int>(v.kappa.size()));
    for (int k : v.kappa) push_int(out, k);
  }
  for (const auto& leg : r.legs) {
    push_int(out, leg.marking.label());
    push_int(out, leg.vertex);
    push_int(out, leg.psi);
  }
  for (const auto& e : r.edges) {
    push_int(out, e.a.vertex);
    push_int(out, e.a.psi);
    push_int(out, e.b.vertex);
    push_int(out, e.b.psi);
  }
  return out;
}

}  // namespace detail

/// Canonical encoding plus canonical representative.
///
/// Vertices are first partitioned by invariants (genus, valence, decorations,
/// legs, loops) refined by neighbour colors; the remaining freedom inside each
/// cell is searched exhaustively and the lexicographically least encoding wins.
inline Canonicalized canonicalize(const DecoratedGraph& input) {
  require_valid(input);
  DecoratedGraph g = input;
  for (auto& v : g.vertices) std::sort(v.kappa.begin(), v.kappa.end());
  const auto color = detail::refined_colors(g);
  Canonicalized best;
  bool have = false;
  detail::for_each_cell_ordering(color, [&](const std::vector<int>& order) {
    DecoratedGraph r = detail::relabel(g, order);
    auto bytes = detail::encode(r);
    if (!have || bytes < best.form.bytes()) {
      best.form = CanonicalForm(std::move(bytes));
      best.graph = std::move(r);
      have = true;
    }
  });
  if (!have) {  // empty graph
    best.graph = g;
    best.form = CanonicalForm(detail::encode(g));
  }
  return best;
}

inline CanonicalForm canonical_form(const DecoratedGraph& g) { return canonicalize(g).form; }

inline bool isomorphic(const DecoratedGraph& x, const DecoratedGraph& y) {
  return canonical_form(x) == canonical_form(y);
}

inline constexpr int kMaxAutomorphismVertices = 8;

/// Order of the automorphism group preserving genus, κ, markings, ψ and
/// incidence, counting half-edge permutations (loop flips, parallel edges).
inline long long automorphism_count(const DecoratedGraph& input) {
  require_valid(input);
  DecoratedGraph g = input;
  for (auto& v : g.vertices) std::sort(v.kappa.begin(), v.kappa.end());
  if (g.vertex_count() > kMaxAutomorphismVertices)
    throw SizeGuardExceeded("automorphism_count supports at most " +
                            std::to_string(kMaxAutomorphismVertices) + " vertices");
  const int nv = g.vertex_count();

  // Edge multiplicities keyed by (u, v, psi_u, psi_v) with u < v, and loops by
  // (v, min psi, max psi).
  using EdgeKey = std::array<int, 4>;
  auto edge_key = [](int u, int pu, int v, int pv) {
    return u < v ? EdgeKey{u, v, pu, pv} : EdgeKey{v, u, pv, pu};
  };
  std::map<EdgeKey, int> pairs;
  std::map<std::array<int, 3>, int> loops;
  for (const auto& e : g.edges) {
    if (e.is_loop())
      ++loops[{e.a.vertex, std::min(e.a.psi, e.b.psi), std::max(e.a.psi, e.b.psi)}];
    else
      ++pairs[edge_key(e.a.vertex, e.a.psi, e.b.vertex, e.b.psi)];
  }

  auto factorial = [](int k) {
    long long f = 1;
    for (int t = 2; t <= k; ++t) f *= t;
    return f;
  };
  // Half-edge choices are independent of the vertex map once it is fixed.
  long long half_edge_factor = 1;
  for (const auto& [key, count] : pairs) half_edge_factor *= factorial(count);
  for (const auto& [key, count] : loops) {
    half_edge_factor *= factorial(count);
    if (key[1] == key[2]) half_edge_factor <<= count;
  }

  const auto color = detail::refined_colors(g);
  long long vertex_maps = 0;
  // sigma ranges over color-preserving permutations.
  std::vector<int> base(nv);
  std::iota(base.begin(), base.end(), 0);
  std::stable_sort(base.begin(), base.end(), [&color](int a, int b) { return color[a] < color[b]; });
  detail::for_each_cell_ordering(color, [&](const std::vector<int>& order) {
    std::vector<int> sigma(nv);
    for (int p = 0; p < nv; ++p) sigma[base[p]] = order[p];
    for (int v = 0; v < nv; ++v) {
      if (g.vertices[v] != g.vertices[sigma[v]]) return;
    }
    for (const auto& leg : g.legs)
      if (sigma[leg.vertex] != leg.vertex) return;  // markings are fixed labels
    for (const auto& [key, count] : pairs) {
      auto it = pairs.find(edge_key(sigma[key[0]], key[2], sigma[key[1]], key[3]));
      if (it == pairs.end() || it->second != count) return;
    }
    for (const auto& [key, count] : loops) {
      auto it = loops.find({sigma[key[0]], key[1], key[2]});
      if (it == loops.end() || it->second != count) return;
    }
    ++vertex_maps;
  });
  return vertex_maps * half_edge_factor;
}

}  // namespace strata
