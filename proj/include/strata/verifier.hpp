#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "strata/canonical.hpp"
#include "strata/enumerate.hpp"
#include "strata/errors.hpp"
#include "strata/graph.hpp"
#include "strata/invariance.hpp"
#include "strata/pushforward.hpp"
#include "strata/rational.hpp"
#include "strata/taut_class.hpp"

// Instance checker for the independence argument on M̄_{g,n} in degree k.
//
// Every degree-k κ/ψ monomial is routed to one of three branches:
//   witness-split      a 2-component term of r_1(monomial) that no other
//                      generator or boundary graph produces;
//   proposition1       κ_{[g/3]} with n = 0, via c != 1 and the κ identity;
//   pushforward-system κ_{[g/3]}, ψ_l^{[g/3]} with n >= 1, via the linear
//                      system obtained from forgetful pushforwards.

namespace strata {

enum class Branch { WitnessSplit, Proposition1, PushforwardSystem };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::WitnessSplit: return "witness-split";
    case Branch::Proposition1: return "proposition1";
    case Branch::PushforwardSystem: return "pushforward-system";
  }
  return "unknown";
}

/// (g, n, k): degree k on M̄_{g,n}.
struct Instance {
  int g = 0;
  int n = 0;
  int k = 0;

  std::string to_string() const {
    return "(" + std::to_string(g) + "," + std::to_string(n) + "," + std::to_string(k) + ")";
  }
  auto operator<=>(const Instance&) const = default;
};

inline int floor_third(int g) { return g / 3; }

// ---------------------------------------------------------------------------
// Generators

/// All κ^I ψ^J of total degree k on (g, n): κ-partitions first (by descending
/// κ-degree, then lexicographic), then ψ exponent vectors.
inline std::vector<InteriorMonomial> generator_monomials(int g, int n, int k) {
  if (k < 0 || k > floor_third(g))
    throw InvalidInput("degree " + std::to_string(k) + " outside 0..floor(g/3) for g=" + std::to_string(g));
  if (n < 0) throw InvalidInput("negative marking count");
  std::vector<InteriorMonomial> out;
  for (int dk = k; dk >= 0; --dk) {
    for (const auto& part : detail::partitions(dk)) {
      const int dpsi = k - dk;
      if (n == 0) {
        if (dpsi == 0) out.emplace_back(part, std::map<int, int>{});
        continue;
      }
      // ψ exponent vectors in reverse-lexicographic order (ψ_1 heaviest first).
      detail::for_each_composition(dpsi, n, [&](const std::vector<int>& exps) {
        std::map<int, int> psi;
        for (int m = 0; m < n; ++m) psi[m + 1] = exps[m];
        out.emplace_back(part, psi);
      });
    }
  }
  // for_each_composition lists ψ_1-light vectors first; flip each ψ block so
  // ψ_1 powers come first.
  for (auto s = out.begin(); s != out.end();) {
    auto e = std::find_if(s, out.end(), [&](const InteriorMonomial& m) { return m.kappa != s->kappa; });
    std::reverse(s, e);
    s = e;
  }
  return out;
}

inline TautClass generator_class(int g, int n, const InteriorMonomial& m) {
  return monomial_class(g, n, m.kappa, m.psi);
}

/// Decorated stable graphs with at least one edge and total degree k
/// (edges + κ + ψ), one per isomorphism class, sorted by encoding.
inline std::vector<DecoratedGraph> boundary_generators(int g, int n, int k, long long limit = enumeration_limit()) {
  if (k < 0) throw InvalidInput("negative degree");
  GraphCollector out(limit);
  for (int e = 1; e <= k; ++e)
    for (const auto& base : enumerate_stable_graphs(g, n, e, e, limit))
      for_each_decoration(base, k - e, [&out](const DecoratedGraph& d) { out.add(d); });
  return out.sorted();
}

// ---------------------------------------------------------------------------
// Witnesses

inline Branch branch_for(const InteriorMonomial& m, int g, int n) {
  const int big_k = floor_third(g), k = m.degree();
  if (k > big_k) throw InvalidInput("monomial degree exceeds floor(g/3)");
  if (k < big_k) return Branch::WitnessSplit;
  const bool pure_kappa = m.psi.empty() && m.kappa == std::vector<int>{big_k};
  const bool pure_psi = m.kappa.empty() && m.psi.size() == 1;
  if (n == 0) return pure_kappa ? Branch::Proposition1 : Branch::WitnessSplit;
  if (n == 1) return (pure_kappa || pure_psi) ? Branch::PushforwardSystem : Branch::WitnessSplit;
  return pure_psi ? Branch::PushforwardSystem : Branch::WitnessSplit;
}

namespace detail {

struct Part {
  int genus = 0;
  std::vector<int> kappa;
  std::vector<std::pair<int, int>> legs;  // (marking, psi)
};

// [a, leg i] ⊔ [b, leg j], no edges.
inline DecoratedGraph two_part_graph(const Part& a, const Part& b) {
  DecoratedGraph out;
  out.vertices = {{a.genus, a.kappa}, {b.genus, b.kappa}};
  for (int v = 0; v < 2; ++v)
    for (auto [mark, psi] : (v == 0 ? a : b).legs) out.legs.push_back({v, Marking(mark), psi});
  out.legs.push_back({0, Marking::i(), 0});
  out.legs.push_back({1, Marking::j(), 0});
  return out;
}

}  // namespace detail

/// Induction inputs a witness relies on, as (g', n', k') instances.
struct WitnessPlan {
  DecoratedGraph graph;
  std::vector<Instance> relies_on;
  std::vector<std::string> notes;
};

/// The 2-component witness of `m`, or nullopt when `m` belongs to the
/// proposition1 or pushforward-system branch.
inline std::optional<WitnessPlan> witness_plan_for(const InteriorMonomial& m, int g, int n) {
  const int big_k = floor_third(g), k = m.degree();
  if (k < 1 || k > big_k) throw InvalidInput("witness needs 1 <= degree <= floor(g/3)");
  if (branch_for(m, g, n) != Branch::WitnessSplit) return std::nullopt;

  auto all_legs = [&] {
    std::vector<std::pair<int, int>> legs;
    for (int q = 1; q <= n; ++q) legs.emplace_back(q, m.psi_exponent(q));
    return legs;
  };
  auto count_legs = [](const detail::Part& p) { return static_cast<int>(p.legs.size()) + 1; };
  auto deg = [](const detail::Part& p) {
    int d = 0;
    for (int x : p.kappa) d += x;
    for (auto [mk, e] : p.legs) d += e;
    return d;
  };

  WitnessPlan plan;
  detail::Part a, b;
  if (k < big_k) {
    a = {g - 1, m.kappa, all_legs()};
    b = {1, {}, {}};
    plan.relies_on.push_back({g - 1, n + 1, k});
    if (n >= 2) plan.notes.push_back("extrapolated construction: markings placed on the genus g-1 part");
  } else if (m.psi.empty() && n <= 1) {
    // κ^I = κ^{I_1} κ^{I_2}: I_1 is the smallest factor.
    const int d1 = m.kappa.front();
    a = {3 * d1, {d1}, {}};
    b = {g - 3 * d1, std::vector<int>(m.kappa.begin() + 1, m.kappa.end()), {}};
    if (n == 1) a.legs.emplace_back(1, 0);
  } else if (n == 1) {
    const int d_kappa = m.degree() - m.psi_exponent(1);
    a = {3 * d_kappa, m.kappa, {}};
    b = {g - 3 * d_kappa, {}, {{1, m.psi_exponent(1)}}};
    plan.notes.push_back("assumes psi_1^d != psi_2^d on M̄_{3d,2} (induction input, not verified)");
  } else if (m.psi.empty()) {
    a = {g, m.kappa, {}};
    for (int q = 1; q <= n - 2; ++q) a.legs.emplace_back(q, 0);
    b = {0, {}, {{n - 1, 0}, {n, 0}}};
  } else if (!m.kappa.empty()) {
    const int d1 = m.degree() - static_cast<int>(std::accumulate(m.psi.begin(), m.psi.end(), 0,
                                                                 [](int s, const auto& kv) { return s + kv.second; }));
    a = {3 * d1, m.kappa, {}};
    b = {g - 3 * d1, {}, all_legs()};
  } else {
    // ψ^J = ψ^{J_1} ψ^{J_2} with J_1 the smallest marking in the support.
    const auto [s, e] = *m.psi.begin();
    a = {3 * e, {}, {{s, e}}};
    b = {g - 3 * e, {}, {}};
    for (int q = 1; q <= n; ++q)
      if (q != s) b.legs.emplace_back(q, m.psi_exponent(q));
  }
  if (k == big_k) {
    plan.relies_on.push_back({a.genus, count_legs(a), deg(a)});
    plan.relies_on.push_back({b.genus, count_legs(b), deg(b)});
  }
  plan.graph = detail::two_part_graph(a, b);
  require_valid(plan.graph);
  return plan;
}

inline std::optional<DecoratedGraph> witness_graph_for(const InteriorMonomial& m, int g, int n) {
  auto plan = witness_plan_for(m, g, n);
  if (!plan) return std::nullopt;
  return plan->graph;
}

/// True iff `term` could be a witness: no edges and ψ^0 on both i and j.
inline bool has_witness_shape(const DecoratedGraph& term) {
  if (!term.edges.empty()) return false;
  const int li = term.find_leg(Marking::i()), lj = term.find_leg(Marking::j());
  return li >= 0 && lj >= 0 && term.legs[li].psi == 0 && term.legs[lj].psi == 0;
}

// ---------------------------------------------------------------------------
// Pushforward linear systems

struct PushedColumn {
  InteriorMonomial source;  ///< upstairs monomial
  InteriorClass image;      ///< forget_pushforward(source · ψ_n)
};

struct CoefficientSystem {
  int g = 0;
  int n = 0;
  int big_k = 0;
  /// n = 1: rows are the ψ_1-multiplied and the plain pushforward equations,
  /// columns the unknowns (a for κ_K, b for ψ_1^K).
  std::vector<std::vector<Rational>> matrix;
  Rational determinant;
  /// n >= 2: pushforward of ψ_l^K ψ_n for every l.
  std::vector<PushedColumn> columns;
  bool images_distinct = false;
  bool solved_zero = false;
  std::vector<std::string> assumptions;
  std::string failure;
};

namespace detail {

// Coefficient of x against κ_index, reading κ_0 as the scalar 2g-2+n.
inline std::optional<Rational> coefficient_against_kappa(const InteriorClass& x, int index) {
  if (index == 0) {
    if (x.terms().size() != 1 || !x.terms().begin()->first.kappa.empty() || !x.terms().begin()->first.psi.empty())
      return x.is_zero() ? std::optional<Rational>(0) : std::nullopt;
    return x.terms().begin()->second / Rational(kappa_zero(x.genus(), x.markings()));
  }
  const InteriorMonomial target({index}, {});
  for (const auto& [m, c] : x.terms())
    if (m != target) return std::nullopt;
  return x.coefficient(target);
}

}  // namespace detail

/// Builds the extremal-monomial equations from the pushforward calculus and
/// solves them. n = 1: the 2x2 system in a (κ_K) and b (ψ_1^K). n >= 2: the
/// images of ψ_l^K · ψ_n under forgetting n.
inline CoefficientSystem solve_coefficient_system(int g, int n) {
  if (g < 3 || n < 1) throw InvalidInput("solve_coefficient_system needs g >= 3 and n >= 1");
  CoefficientSystem out;
  out.g = g;
  out.n = n;
  out.big_k = floor_third(g);
  const int big_k = out.big_k;

  if (n == 1) {
    const std::vector<InteriorMonomial> unknowns{InteriorMonomial({big_k}, {}), InteriorMonomial({}, {{1, big_k}})};
    out.matrix.assign(2, std::vector<Rational>(2));
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      const TautClass column = generator_class(g, 1, unknowns[c]);
      const auto times_psi = forget_pushforward(to_interior(mul_psi(column, Marking(1))), 1);
      const auto plain = forget_pushforward(to_interior(column), 1);
      auto r0 = detail::coefficient_against_kappa(times_psi, big_k);
      auto r1 = detail::coefficient_against_kappa(plain, big_k - 1);
      if (!r0 || !r1) {
        out.failure = "pushforward of " + unknowns[c].to_string() + " is not a multiple of the expected kappa class";
        return out;
      }
      out.matrix[0][c] = *r0;
      out.matrix[1][c] = *r1;
    }
    out.determinant = out.matrix[0][0] * out.matrix[1][1] - out.matrix[0][1] * out.matrix[1][0];
    out.solved_zero = out.determinant != 0;
    out.images_distinct = true;
    out.assumptions.push_back("kappa_" + std::to_string(big_k) + " != 0 and kappa_" + std::to_string(big_k - 1) +
                              " != 0 modulo the boundary");
    if (!out.solved_zero) out.failure = "singular system";
    return out;
  }

  std::set<InteriorMonomial> images;
  bool single = true;
  for (int l = 1; l <= n; ++l) {
    PushedColumn col;
    col.source = InteriorMonomial({}, {{l, big_k}});
    const TautClass up = mul_psi(generator_class(g, n, col.source), Marking(n));
    col.image = forget_pushforward(to_interior(up), n);
    if (col.image.terms().size() != 1 || col.image.terms().begin()->second == 0)
      single = false;
    else
      images.insert(col.image.terms().begin()->first);
    out.columns.push_back(std::move(col));
  }
  out.images_distinct = single && static_cast<int>(images.size()) == n;
  out.solved_zero = out.images_distinct;
  out.assumptions.push_back("degree-" + std::to_string(big_k) + " monomials independent on " +
                            Instance{g, n - 1, big_k}.to_string() + " modulo the boundary (induction)");
  if (!out.solved_zero) out.failure = "pushforward images are not distinct single monomials";
  return out;
}

// ---------------------------------------------------------------------------
// Report

struct CoefficientEntry {
  std::string generator;  ///< monomial text or "boundary:<hex>"
  Rational coeff;
};

struct MonomialVerdict {
  InteriorMonomial monomial;
  Branch branch = Branch::WitnessSplit;
  std::optional<DecoratedGraph> witness;
  std::string witness_encoding;
  Rational self_coefficient;
  std::vector<CoefficientEntry> others;
  std::vector<Instance> relies_on;
  std::vector<std::string> notes;
  bool pass = false;
  std::string failure;
};

struct RecursiveCheck {
  Instance instance;
  std::string status;  ///< "pass", "fail", "trivial"
};

struct VerificationReport {
  Instance instance;
  std::vector<MonomialVerdict> monomials;
  std::vector<std::string> boundary_encodings;
  bool boundary_separation = false;  ///< every r_1(boundary) term has an edge or ψ on i/j
  std::optional<Proposition1Report> proposition1;
  std::optional<KappaIdentityCheck> kappa_identity;
  std::optional<CoefficientSystem> system;
  std::vector<std::string> assumptions;
  std::vector<RecursiveCheck> recursive;
  bool pass = false;
};

struct VerifyOptions {
  bool recursive = false;
  /// Replacement witnesses keyed by monomial text (fault injection, audits).
  std::map<std::string, DecoratedGraph> witness_overrides;
  long long limit = enumeration_limit();
};

namespace detail {

inline VerificationReport verify_instance(const Instance& inst, const VerifyOptions& opts,
                                          std::map<Instance, bool>& memo);

inline void run_recursive(VerificationReport& report, const VerifyOptions& opts, std::map<Instance, bool>& memo) {
  std::set<Instance> wanted;
  for (const auto& mv : report.monomials) wanted.insert(mv.relies_on.begin(), mv.relies_on.end());
  if (report.system && report.instance.n >= 2) wanted.insert({report.instance.g, report.instance.n - 1, report.instance.k});
  for (const auto& sub : wanted) {
    if (sub.k < 1 || sub.g < 3 || sub.k > floor_third(sub.g)) {
      report.recursive.push_back({sub, "trivial"});
      continue;
    }
    auto it = memo.find(sub);
    if (it == memo.end()) {
      VerifyOptions sub_opts = opts;
      sub_opts.witness_overrides.clear();
      it = memo.emplace(sub, verify_instance(sub, sub_opts, memo).pass).first;
    }
    report.recursive.push_back({sub, it->second ? "pass" : "fail"});
    report.pass = report.pass && it->second;
  }
}

inline VerificationReport verify_instance(const Instance& inst, const VerifyOptions& opts,
                                          std::map<Instance, bool>& memo) {
  const auto [g, n, k] = inst;
  if (k < 1 || k > floor_third(g)) throw InvalidInput("verify needs 1 <= k <= floor(g/3), got " + inst.to_string());
  VerificationReport report;
  report.instance = inst;

  const auto gens = generator_monomials(g, n, k);
  const auto boundary = boundary_generators(g, n, k, opts.limit);

  std::vector<TautClass> gen_images;
  gen_images.reserve(gens.size());
  for (const auto& m : gens) gen_images.push_back(r_1(generator_class(g, n, m)));

  std::vector<TautClass> boundary_images;
  const auto ambient = AmbientSignature::connected(g, n);
  report.boundary_separation = true;
  for (const auto& b : boundary) {
    report.boundary_encodings.push_back(canonical_form(b).hex());
    TautClass x(ambient);
    x.add_term(b, 1);
    boundary_images.push_back(r_1(x));
    for (const auto& [form, term] : boundary_images.back().terms())
      if (has_witness_shape(term.graph)) report.boundary_separation = false;
  }

  bool need_prop1 = false, need_system = false;
  for (std::size_t idx = 0; idx < gens.size(); ++idx) {
    MonomialVerdict mv;
    mv.monomial = gens[idx];
    mv.branch = branch_for(gens[idx], g, n);
    if (mv.branch == Branch::Proposition1) {
      need_prop1 = true;
    } else if (mv.branch == Branch::PushforwardSystem) {
      need_system = true;
    } else {
      auto plan = witness_plan_for(gens[idx], g, n);
      mv.relies_on = plan->relies_on;
      mv.notes = plan->notes;
      mv.witness = plan->graph;
      if (auto it = opts.witness_overrides.find(gens[idx].to_string()); it != opts.witness_overrides.end()) {
        mv.witness = it->second;
        mv.notes.push_back("witness supplied by override table");
      }
      if (auto why = validate(*mv.witness); !why) {
        mv.failure = "witness graph invalid: " + why.message();
      } else {
        const auto form = canonical_form(*mv.witness);
        mv.witness_encoding = form.hex();
        mv.self_coefficient = coefficient_of(gen_images[idx], form);
        bool clean = mv.self_coefficient != 0;
        if (!clean) mv.failure = "witness does not occur in r_1 of its own monomial";
        if (!has_witness_shape(*mv.witness) || component_count(*mv.witness) != 2) {
          clean = false;
          mv.failure = "witness is not an edge-free 2-component graph with psi^0 on i and j";
        }
        for (std::size_t o = 0; o < gens.size(); ++o) {
          if (o == idx) continue;
          const Rational c = coefficient_of(gen_images[o], form);
          mv.others.push_back({gens[o].to_string(), c});
          if (c != 0 && clean) {
            clean = false;
            mv.failure = "witness also occurs in r_1(" + gens[o].to_string() + ")";
          }
        }
        for (std::size_t o = 0; o < boundary.size(); ++o) {
          const Rational c = coefficient_of(boundary_images[o], form);
          mv.others.push_back({"boundary:" + report.boundary_encodings[o], c});
          if (c != 0 && clean) {
            clean = false;
            mv.failure = "witness also occurs in r_1 of boundary graph " + report.boundary_encodings[o];
          }
        }
        mv.pass = clean;
      }
    }
    report.monomials.push_back(std::move(mv));
  }

  if (need_prop1) {
    report.proposition1 = proposition1_report(g);
    report.kappa_identity = verify_kappa_identity(g, floor_third(g));
    const Rational c = faber_constant(g, floor_third(g));
    const bool ok = c != 1 && report.kappa_identity->equal;
    report.assumptions.push_back(report.proposition1->assumption);
    for (auto& mv : report.monomials) {
      if (mv.branch != Branch::Proposition1) continue;
      mv.self_coefficient = c;
      mv.pass = ok;
      if (!ok) mv.failure = "c = 1 or kappa identity failed";
    }
  }
  if (need_system) {
    report.system = solve_coefficient_system(g, n);
    for (const auto& a : report.system->assumptions) report.assumptions.push_back(a);
    for (auto& mv : report.monomials) {
      if (mv.branch != Branch::PushforwardSystem) continue;
      mv.pass = report.system->solved_zero;
      mv.failure = report.system->failure;
      if (n >= 2) mv.relies_on.push_back({g, n - 1, k});
    }
  }

  std::set<Instance> named;
  for (const auto& mv : report.monomials) named.insert(mv.relies_on.begin(), mv.relies_on.end());
  for (const auto& sub : named)
    report.assumptions.push_back("degree-" + std::to_string(sub.k) + " kappa/psi monomials independent on M̄_{" +
                                 std::to_string(sub.g) + "," + std::to_string(sub.n) + "} modulo the boundary " +
                                 sub.to_string());

  report.pass = report.boundary_separation &&
                std::all_of(report.monomials.begin(), report.monomials.end(), [](const auto& mv) { return mv.pass; });
  if (opts.recursive) run_recursive(report, opts, memo);
  return report;
}

}  // namespace detail

/// Replays the independence argument for degree k on M̄_{g,n}.
inline VerificationReport verify_witness_independence(int g, int n, int k, const VerifyOptions& opts = {}) {
  std::map<Instance, bool> memo;
  return detail::verify_instance({g, n, k}, opts, memo);
}

}  // namespace strata
