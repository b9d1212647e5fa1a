#pragma once

// Test-only helpers: random graph generators and brute-force oracles that
// do not share code paths with the library's canonicalization.

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "strata/strata.hpp"

namespace strata::testing {

inline std::uint64_t logged_seed(const char* what, std::uint64_t seed) {
  std::cout << "[seed] " << what << " = " << seed << '\n';
  return seed;
}

struct RandomGraphSpec {
  int max_vertices = 4;
  int max_genus = 6;     ///< bound on arithmetic genus
  int max_extra_edges = 2;
  int max_markings = 3;
  int max_decoration = 2;
  bool decorate = true;
};

/// Random connected stable decorated graph; retries until stable and within
/// the genus bound.
inline DecoratedGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec = {}) {
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    DecoratedGraph g;
    const int nv = pick(1, spec.max_vertices);
    for (int v = 0; v < nv; ++v) g.vertices.push_back({pick(0, 2), {}});
    for (int v = 1; v < nv; ++v) g.edges.push_back({{pick(0, v - 1), 0}, {v, 0}});  // spanning tree
    const int extra = pick(0, spec.max_extra_edges);
    for (int e = 0; e < extra; ++e) g.edges.push_back({{pick(0, nv - 1), 0}, {pick(0, nv - 1), 0}});
    const int n = pick(0, spec.max_markings);
    for (int m = 1; m <= n; ++m) g.legs.push_back({pick(0, nv - 1), Marking(m), 0});
    if (spec.decorate) {
      for (auto& v : g.vertices)
        if (pick(0, 2) == 0) v.kappa.push_back(pick(1, spec.max_decoration));
      for (auto& leg : g.legs) leg.psi = pick(0, 1) ? pick(0, spec.max_decoration) : 0;
      for (auto& e : g.edges) {
        if (pick(0, 3) == 0) e.a.psi = pick(1, spec.max_decoration);
        if (pick(0, 3) == 0) e.b.psi = pick(1, spec.max_decoration);
      }
    }
    if (validate(g) && arithmetic_genus(g) <= spec.max_genus) return g;
  }
}

/// Same graph under a random vertex permutation, shuffled legs and edges, and
/// randomly flipped edge orientations.
inline DecoratedGraph random_relabel(const DecoratedGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(g.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  DecoratedGraph out;
  out.vertices.resize(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    out.vertices[perm[v]] = g.vertices[v];
    std::shuffle(out.vertices[perm[v]].kappa.begin(), out.vertices[perm[v]].kappa.end(), rng);
  }
  for (const auto& leg : g.legs) out.legs.push_back({perm[leg.vertex], leg.marking, leg.psi});
  for (const auto& e : g.edges) {
    Edge f{{perm[e.a.vertex], e.a.psi}, {perm[e.b.vertex], e.b.psi}};
    if (rng() & 1u) std::swap(f.a, f.b);
    out.edges.push_back(f);
  }
  std::shuffle(out.legs.begin(), out.legs.end(), rng);
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

/// Isomorphism by trying every vertex bijection and comparing sorted
/// incidence data.
inline bool brute_force_isomorphic(const DecoratedGraph& x, const DecoratedGraph& y) {
  if (x.vertices.size() != y.vertices.size() || x.legs.size() != y.legs.size() || x.edges.size() != y.edges.size())
    return false;
  auto sorted_kappa = [](std::vector<int> k) {
    std::sort(k.begin(), k.end());
    return k;
  };
  auto edge_list = [](const DecoratedGraph& g, const std::vector<int>& map) {
    std::vector<std::array<int, 4>> out;
    for (const auto& e : g.edges) {
      std::array<int, 4> t{map[e.a.vertex], e.a.psi, map[e.b.vertex], e.b.psi};
      if (std::make_pair(t[2], t[3]) < std::make_pair(t[0], t[1])) t = {t[2], t[3], t[0], t[1]};
      out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::map<Marking, std::pair<int, int>> ylegs;
  for (const auto& leg : y.legs) ylegs[leg.marking] = {leg.vertex, leg.psi};
  std::vector<int> id(y.vertices.size());
  std::iota(id.begin(), id.end(), 0);
  const auto yedges = edge_list(y, id);

  std::vector<int> sigma(x.vertices.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < sigma.size() && ok; ++v)
      ok = x.vertices[v].genus == y.vertices[sigma[v]].genus &&
           sorted_kappa(x.vertices[v].kappa) == sorted_kappa(y.vertices[sigma[v]].kappa);
    for (const auto& leg : x.legs) {
      if (!ok) break;
      auto it = ylegs.find(leg.marking);
      ok = it != ylegs.end() && it->second == std::make_pair(sigma[leg.vertex], leg.psi);
    }
    if (ok && edge_list(x, sigma) == yedges) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

/// |Aut| by enumerating vertex bijections and explicit permutations of the
/// edge half-edges, checking that pairing, incidence and ψ are preserved.
inline long long brute_force_automorphisms(const DecoratedGraph& g) {
  const int nv = g.vertex_count();
  const int nh = 2 * g.edge_count();
  auto half = [&g](int h) { return h % 2 == 0 ? g.edges[h / 2].a : g.edges[h / 2].b; };
  auto sorted_kappa = [](std::vector<int> k) {
    std::sort(k.begin(), k.end());
    return k;
  };
  long long count = 0;
  std::vector<int> sigma(nv);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < nv && ok; ++v)
      ok = g.vertices[v].genus == g.vertices[sigma[v]].genus &&
           sorted_kappa(g.vertices[v].kappa) == sorted_kappa(g.vertices[sigma[v]].kappa);
    for (const auto& leg : g.legs) ok = ok && sigma[leg.vertex] == leg.vertex;
    if (!ok) continue;
    std::vector<int> tau(nh);
    std::iota(tau.begin(), tau.end(), 0);
    do {
      bool good = true;
      for (int h = 0; h < nh && good; ++h) {
        const auto src = half(h), dst = half(tau[h]);
        good = sigma[src.vertex] == dst.vertex && src.psi == dst.psi && (tau[h ^ 1] == (tau[h] ^ 1));
      }
      count += good;
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

/// Number of connected stable graphs with exactly one edge: the loop graph
/// plus unordered separating splits, counted directly.
inline int one_edge_graph_count(int g, int n) {
  int count = 0;
  if (g >= 1 && 2 * (g - 1) - 2 + n + 2 > 0) ++count;
  // Ordered (g1, S) with S ⊆ {1..n} on side 1; each unordered split counted twice.
  int ordered = 0;
  for (int g1 = 0; g1 <= g; ++g1)
    for (unsigned s = 0; s < (1u << n); ++s) {
      const int n1 = __builtin_popcount(s), n2 = n - n1;
      if (2 * g1 - 2 + n1 + 1 > 0 && 2 * (g - g1) - 2 + n2 + 1 > 0) ++ordered;
    }
  // A split that is its own mirror image (n = 0, g1 = g2) was counted once.
  const int self_mirror = (n == 0 && g % 2 == 0 && g / 2 >= 1) ? 1 : 0;
  return count + (ordered + self_mirror) / 2;
}

inline BigInt factorial(int m) {
  BigInt f = 1;
  for (int t = 2; t <= m; ++t) f *= t;
  return f;
}

/// (2m-1)!! = (2m)! / (2^m m!), an independent route to double factorials.
inline BigInt odd_double_factorial(int m) {
  if (m <= 0) return 1;
  return factorial(2 * m) / (BigInt(1) << m) / factorial(m);
}

inline DecoratedGraph two_vertex_graph(int g1, std::vector<int> k1, std::vector<std::pair<Marking, int>> legs1, int g2,
                                       std::vector<int> k2, std::vector<std::pair<Marking, int>> legs2) {
  DecoratedGraph out;
  out.vertices = {{g1, std::move(k1)}, {g2, std::move(k2)}};
  for (auto [m, p] : legs1) out.legs.push_back({0, m, p});
  for (auto [m, p] : legs2) out.legs.push_back({1, m, p});
  return out;
}

}  // namespace strata::testing
