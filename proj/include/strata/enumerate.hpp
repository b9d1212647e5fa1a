#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "strata/canonical.hpp"
#include "strata/errors.hpp"
#include "strata/graph.hpp"

namespace strata {

inline constexpr long long kDefaultMaxGraphs = 100000;

/// Enumeration cap: STRATA_MAX_GRAPHS if set to a positive integer, else 100000.
inline long long enumeration_limit() {
  if (const char* env = std::getenv("STRATA_MAX_GRAPHS")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultMaxGraphs;
}

/// Deduplicating sink keyed by canonical form; counts candidates against a cap.
class GraphCollector {
 public:
  explicit GraphCollector(long long limit = enumeration_limit()) : limit_(limit) {}

  void add(const DecoratedGraph& g) {
    if (++candidates_ > limit_)
      throw SizeGuardExceeded("enumeration exceeded " + std::to_string(limit_) +
                              " candidate graphs (raise STRATA_MAX_GRAPHS)");
    auto c = canonicalize(g);
    graphs_.try_emplace(std::move(c.form), std::move(c.graph));
  }

  const std::map<CanonicalForm, DecoratedGraph>& graphs() const { return graphs_; }

  std::vector<DecoratedGraph> sorted() const {
    std::vector<DecoratedGraph> out;
    out.reserve(graphs_.size());
    for (const auto& [form, g] : graphs_) out.push_back(g);
    return out;
  }

 private:
  long long limit_;
  long long candidates_ = 0;
  std::map<CanonicalForm, DecoratedGraph> graphs_;
};

namespace detail {

inline void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      cur[idx] = left;
      visit(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[idx] = x;
      rec(idx + 1, left - x);
    }
  };
  if (parts > 0) rec(0, total);
}

// Multisets of `count` vertex pairs (u <= v) over `nv` vertices.
inline void for_each_edge_multiset(int nv, int count,
                                   const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < nv; ++u)
    for (int v = u; v < nv; ++v) pairs.emplace_back(u, v);
  std::vector<std::pair<int, int>> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == count) {
      visit(cur);
      return;
    }
    for (std::size_t p = start; p < pairs.size(); ++p) {
      cur.push_back(pairs[p]);
      rec(p);
      cur.pop_back();
    }
  };
  rec(0);
}

/// Partitions of `total` into positive parts, ascending.
inline std::vector<std::vector<int>> partitions(int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int min_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = min_part; p <= left; ++p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(total, 1);
  return out;
}

}  // namespace detail

/// Connected stable graphs of arithmetic genus `g` with legs 1..n and an
/// edge count in [min_edges, max_edges], one per isomorphism class, sorted by
/// canonical encoding. The default `min_edges` omits the open stratum unless
/// `max_edges` is 0.
inline std::vector<DualGraph> enumerate_stable_graphs(int g, int n, int max_edges, int min_edges = -1,
                                                      long long limit = enumeration_limit()) {
  if (g < 0 || n < 0 || max_edges < 0) throw InvalidInput("enumerate_stable_graphs: negative argument");
  if (min_edges < 0) min_edges = std::min(1, max_edges);
  GraphCollector out(limit);
  for (int e = min_edges; e <= max_edges; ++e) {
    for (int nv = 1; nv <= e + 1; ++nv) {
      const int genus_sum = g - e + nv - 1;
      if (genus_sum < 0) continue;
      detail::for_each_edge_multiset(nv, e, [&](const std::vector<std::pair<int, int>>& edges) {
        DecoratedGraph base;
        base.vertices.assign(nv, Vertex{});
        for (auto [u, v] : edges) base.edges.push_back({{u, 0}, {v, 0}});
        if (component_count(base) != 1) return;
        detail::for_each_composition(genus_sum, nv, [&](const std::vector<int>& genera) {
          for (int v = 0; v < nv; ++v) base.vertices[v].genus = genera[v];
          // Every assignment of the n legs to vertices.
          std::vector<int> where(n, 0);
          while (true) {
            DecoratedGraph cand = base;
            for (int m = 0; m < n; ++m) cand.legs.push_back({where[m], Marking(m + 1), 0});
            if (validate(cand)) out.add(cand);
            int m = 0;
            for (; m < n; ++m) {
              if (++where[m] < nv) break;
              where[m] = 0;
            }
            if (m == n) break;
          }
        });
      });
    }
  }
  return out.sorted();
}

/// Every way of adding degree-`degree` decorations (κ-monomials on vertices,
/// ψ-powers on legs and edge endpoints) to `base`, fed to `sink`.
inline void for_each_decoration(const DecoratedGraph& base, int degree,
                                const std::function<void(const DecoratedGraph&)>& sink) {
  const int nv = base.vertex_count();
  const int nl = static_cast<int>(base.legs.size());
  const int ne = base.edge_count();
  const int slots = nv + nl + 2 * ne;
  if (slots == 0) {
    if (degree == 0) sink(base);
    return;
  }
  std::vector<std::vector<std::vector<int>>> parts(degree + 1);
  for (int d = 0; d <= degree; ++d) parts[d] = detail::partitions(d);

  DecoratedGraph cur = base;
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == slots) {
      if (left == 0) sink(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      if (slot < nv) {
        for (const auto& p : parts[a]) {
          auto& kappa = cur.vertices[slot].kappa;
          kappa = base.vertices[slot].kappa;
          kappa.insert(kappa.end(), p.begin(), p.end());
          std::sort(kappa.begin(), kappa.end());
          rec(slot + 1, left - a);
        }
        cur.vertices[slot].kappa = base.vertices[slot].kappa;
        continue;
      }
      int s = slot - nv;
      int& target = s < nl ? cur.legs[s].psi : ((s - nl) % 2 == 0 ? cur.edges[(s - nl) / 2].a.psi
                                                                  : cur.edges[(s - nl) / 2].b.psi);
      const int saved = target;
      target = saved + a;
      rec(slot + 1, left - a);
      target = saved;
    }
  };
  rec(0, degree);
}

}  // namespace strata
