#pragma once

#include <string>
#include <vector>

#include "strata/errors.hpp"
#include "strata/graph.hpp"
#include "strata/rational.hpp"
#include "strata/taut_class.hpp"

// The invariance operator r_l and its three constituent graph operations.
//
// Every operation maps a connected decorated graph of arithmetic genus g to
// a class on M̄•_{g-1} with the two new legs i, j added and at most two
// connected components. Unstable outputs are dropped.

namespace strata {

/// Target ambient of r_l for a connected input ambient.
inline AmbientSignature invariance_target(const AmbientSignature& source) {
  if (source.markings.count(Marking::i()) || source.markings.count(Marking::j()))
    throw InvalidInput("input ambient already carries the special legs i/j");
  AmbientSignature out{source.genus - 1, source.markings, 2};
  out.markings.insert(Marking::i());
  out.markings.insert(Marking::j());
  return out;
}

namespace detail {

inline AmbientSignature target_for(const DecoratedGraph& g) {
  require_valid(g);
  if (component_count(g) != 1) throw InvalidInput("invariance operations need a connected graph");
  return invariance_target(AmbientSignature{arithmetic_genus(g), g.markings(), 1});
}

inline void emit_if_stable(TautClass& out, const DecoratedGraph& g, const Rational& c) {
  if (validate(g)) out.add_term(g, c);
}

inline void require_positive_l(int l) {
  if (l < 1) throw InvalidInput("r_l needs l >= 1, got " + std::to_string(l));
}

}  // namespace detail

/// Cutting edges: each edge in turn becomes legs i, j (both labelings);
/// ψ^l is multiplied onto the i-leg with weight 1/2, or onto the j-leg with
/// weight (-1)^l/2.
inline TautClass cut_edges(const DecoratedGraph& g, int l) {
  detail::require_positive_l(l);
  TautClass out(detail::target_for(g));
  const Rational half(1, 2);
  const Rational signed_half = sign_power(l) * half;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    DecoratedGraph cut = g;
    const Edge e = cut.edges[k];
    cut.edges.erase(cut.edges.begin() + static_cast<std::ptrdiff_t>(k));
    for (const auto& [to_i, to_j] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
      DecoratedGraph on_i = cut, on_j = cut;
      on_i.legs.push_back({to_i.vertex, Marking::i(), to_i.psi + l});
      on_i.legs.push_back({to_j.vertex, Marking::j(), to_j.psi});
      on_j.legs.push_back({to_i.vertex, Marking::i(), to_i.psi});
      on_j.legs.push_back({to_j.vertex, Marking::j(), to_j.psi + l});
      detail::emit_if_stable(out, on_i, half);
      detail::emit_if_stable(out, on_j, signed_half);
    }
  }
  return out;
}

/// Genus reduction: a vertex of genus h >= 1 drops to h-1 and gains legs
/// i (ψ^{l-1-m}) and j (ψ^m), weight (-1)^{m+1}/2, for m = 0..l-1.
inline TautClass reduce_genus(const DecoratedGraph& g, int l) {
  detail::require_positive_l(l);
  TautClass out(detail::target_for(g));
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.vertices[v].genus < 1) continue;
    for (int m = 0; m < l; ++m) {
      DecoratedGraph r = g;
      --r.vertices[v].genus;
      r.legs.push_back({v, Marking::i(), l - 1 - m});
      r.legs.push_back({v, Marking::j(), m});
      detail::emit_if_stable(out, r, sign_power(m + 1) * Rational(1, 2));
    }
  }
  return out;
}

inline constexpr int kMaxSplitHalfEdges = 20;

/// Vertex splitting: a vertex becomes two vertices (the first with a new leg
/// i carrying ψ^{l-1-m}, the second with j carrying ψ^m), over every ordered
/// genus split, every distribution of the vertex's legs and edge endpoints,
/// and every distribution of its κ factors (equal indices distinguishable).
/// Weight (-1)^{m+1}/2.
inline TautClass split_vertices(const DecoratedGraph& g, int l) {
  detail::require_positive_l(l);
  TautClass out(detail::target_for(g));
  const int nv = g.vertex_count();
  for (int v = 0; v < nv; ++v) {
    // Half-edges at v: legs by index, then edge endpoints as (edge, side).
    std::vector<int> legs_here;
    std::vector<std::pair<int, int>> ends_here;
    for (std::size_t k = 0; k < g.legs.size(); ++k)
      if (g.legs[k].vertex == v) legs_here.push_back(static_cast<int>(k));
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      if (g.edges[k].a.vertex == v) ends_here.emplace_back(static_cast<int>(k), 0);
      if (g.edges[k].b.vertex == v) ends_here.emplace_back(static_cast<int>(k), 1);
    }
    const auto& kappa = g.vertices[v].kappa;
    const int nh = static_cast<int>(legs_here.size() + ends_here.size());
    const int nk = static_cast<int>(kappa.size());
    if (nh + nk > kMaxSplitHalfEdges) throw SizeGuardExceeded("vertex too large to split");
    const int h = g.vertices[v].genus;

    for (int m = 0; m < l; ++m) {
      const Rational coeff = sign_power(m + 1) * Rational(1, 2);
      for (int g1 = 0; g1 <= h; ++g1) {
        for (unsigned hmask = 0; hmask < (1u << nh); ++hmask) {
          for (unsigned kmask = 0; kmask < (1u << nk); ++kmask) {
            DecoratedGraph s = g;
            const int w = nv;  // second part
            s.vertices.push_back({h - g1, {}});
            s.vertices[v] = {g1, {}};
            for (int t = 0; t < nk; ++t) (kmask >> t & 1u ? s.vertices[v] : s.vertices[w]).kappa.push_back(kappa[t]);
            int bit = 0;
            for (int leg : legs_here) s.legs[leg].vertex = (hmask >> bit++ & 1u) ? v : w;
            for (auto [edge, side] : ends_here) {
              auto& end = side == 0 ? s.edges[edge].a : s.edges[edge].b;
              end.vertex = (hmask >> bit++ & 1u) ? v : w;
            }
            s.legs.push_back({v, Marking::i(), l - 1 - m});
            s.legs.push_back({w, Marking::j(), m});
            detail::emit_if_stable(out, s, coeff);
          }
        }
      }
    }
  }
  return out;
}

struct InvarianceOptions {
  /// Allows l > 1, whose degree bookkeeping is not validated.
  bool experimental = false;
};

/// r_l split by the operation each term came from.
struct InvarianceTrace {
  TautClass cut;
  TautClass reduce;
  TautClass split;

  TautClass total() const { return cut + reduce + split; }
};

inline InvarianceTrace r_l_traced(const TautClass& x, int l, InvarianceOptions opts = {}) {
  detail::require_positive_l(l);
  if (l > 1 && !opts.experimental) throw Unsupported("r_l with l > 1 is experimental; pass the experimental flag");
  if (x.ambient().max_components != 1) throw InvalidInput("r_l needs a connected ambient space");
  const AmbientSignature target = invariance_target(x.ambient());
  InvarianceTrace out{TautClass(target), TautClass(target), TautClass(target)};
  for (const auto& [form, term] : x.terms()) {
    out.cut += scale(term.coeff, cut_edges(term.graph, l));
    out.reduce += scale(term.coeff, reduce_genus(term.graph, l));
    out.split += scale(term.coeff, split_vertices(term.graph, l));
  }
  return out;
}

/// The invariance operator: cut_edges + reduce_genus + split_vertices,
/// extended linearly. Output lives on M̄•_{g-1, markings ∪ {i, j}}.
inline TautClass r_l(const TautClass& x, int l, InvarianceOptions opts = {}) {
  return r_l_traced(x, l, opts).total();
}

inline TautClass r_1(const TautClass& x) { return r_l(x, 1); }

}  // namespace strata
