#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strata/canonical.hpp"
#include "strata/errors.hpp"
#include "strata/graph.hpp"
#include "strata/rational.hpp"

namespace strata {

/// The space a class lives on: M̄_{genus, markings}, possibly disconnected
/// with up to `max_components` connected components.
struct AmbientSignature {
  int genus = 0;
  std::set<Marking> markings;
  int max_components = 1;

  /// M̄_{g,n} with markings 1..n.
  static AmbientSignature connected(int g, int n) {
    AmbientSignature s{g, {}, 1};
    for (int m = 1; m <= n; ++m) s.markings.insert(Marking(m));
    return s;
  }

  std::string to_string() const {
    std::string out = "(g=" + std::to_string(genus) + ", markings={";
    bool first = true;
    for (auto m : markings) {
      out += (first ? "" : ",") + m.to_string();
      first = false;
    }
    return out + "}, max_components=" + std::to_string(max_components) + ")";
  }

  bool operator==(const AmbientSignature&) const = default;
};

/// Checks that `g` is a valid graph of the ambient space. Returns an empty
/// string on success, else a description of the violated condition.
inline std::string signature_violation(const AmbientSignature& s, const DecoratedGraph& g) {
  if (auto r = validate(g); !r) return r.message();
  if (arithmetic_genus(g) != s.genus)
    return "arithmetic genus " + std::to_string(arithmetic_genus(g)) + " differs from ambient genus " +
           std::to_string(s.genus);
  if (g.markings() != s.markings) return "leg markings differ from ambient markings";
  if (component_count(g) > s.max_components)
    return std::to_string(component_count(g)) + " components exceed ambient bound " +
           std::to_string(s.max_components);
  return {};
}

/// Finite formal Q-linear combination of canonical decorated graphs.
///
/// Coefficients are the formal multipliers of canonical representatives; no
/// 1/|Aut| factor is folded in. Zero coefficients are never stored.
class TautClass {
 public:
  struct Term {
    DecoratedGraph graph;  ///< canonical representative
    Rational coeff;
  };

  TautClass() = default;
  explicit TautClass(AmbientSignature ambient) : ambient_(std::move(ambient)) {}

  const AmbientSignature& ambient() const { return ambient_; }
  const std::map<CanonicalForm, Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c·g. Throws InvalidInput if g does not belong to the ambient space.
  void add_term(const DecoratedGraph& g, const Rational& c) {
    if (auto why = signature_violation(ambient_, g); !why.empty())
      throw InvalidInput("graph not in ambient " + ambient_.to_string() + ": " + why);
    add_canonical(canonicalize(g), c);
  }

  /// Same as add_term but for an already-canonicalized graph; skips the checks.
  void add_canonical(Canonicalized c, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(c.form);
    if (it == terms_.end()) {
      terms_.emplace(std::move(c.form), Term{std::move(c.graph), coeff});
      return;
    }
    it->second.coeff += coeff;
    if (it->second.coeff == 0) terms_.erase(it);
  }

  TautClass& operator+=(const TautClass& other) {
    if (other.ambient_ != ambient_)
      throw SignatureMismatch("cannot add classes on " + ambient_.to_string() + " and " +
                              other.ambient_.to_string());
    for (const auto& [form, term] : other.terms_) add_canonical({form, term.graph}, term.coeff);
    return *this;
  }

  TautClass& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [form, term] : terms_) term.coeff *= c;
    return *this;
  }

  bool operator==(const TautClass& other) const {
    if (ambient_ != other.ambient_ || terms_.size() != other.terms_.size()) return false;
    for (auto a = terms_.begin(), b = other.terms_.begin(); a != terms_.end(); ++a, ++b)
      if (a->first != b->first || a->second.coeff != b->second.coeff) return false;
    return true;
  }

 private:
  AmbientSignature ambient_;
  std::map<CanonicalForm, Term> terms_;
};

inline TautClass add(TautClass x, const TautClass& y) {
  x += y;
  return x;
}

inline TautClass scale(const Rational& c, TautClass x) {
  x *= c;
  return x;
}

inline TautClass operator+(TautClass x, const TautClass& y) { return add(std::move(x), y); }
inline TautClass operator*(const Rational& c, TautClass x) { return scale(c, std::move(x)); }
inline TautClass operator-(TautClass x, const TautClass& y) { return add(std::move(x), scale(-1, y)); }

/// Interior monomial κ^I ψ^J on the single-vertex graph of M̄_{g,n}.
/// `psi` maps markings in 1..n to exponents; absent markings carry ψ^0.
inline TautClass monomial_class(int g, int n, std::vector<int> kappa, const std::map<int, int>& psi = {}) {
  if (n < 0) throw InvalidInput("negative marking count");
  for (const auto& [m, e] : psi)
    if (m < 1 || m > n) throw InvalidInput("psi exponent on marking " + std::to_string(m) + " outside 1.." + std::to_string(n));
  DecoratedGraph graph = smooth_graph(g, n);
  std::sort(kappa.begin(), kappa.end());
  graph.vertices[0].kappa = std::move(kappa);
  for (auto& leg : graph.legs)
    if (auto it = psi.find(leg.marking.label()); it != psi.end()) leg.psi = it->second;
  require_valid(graph);
  TautClass out(AmbientSignature::connected(g, n));
  out.add_term(graph, 1);
  return out;
}

/// Common total degree of the terms; nullopt when the terms disagree.
/// Throws InvalidInput on the zero class, whose degree is undefined.
inline std::optional<int> degree(const TautClass& x) {
  if (x.is_zero()) throw InvalidInput("degree of the zero class is undefined");
  std::optional<int> d;
  for (const auto& [form, term] : x.terms()) {
    const int t = term.graph.degree();
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

/// Multiplies every (interior) term by ψ_m.
inline TautClass mul_psi(const TautClass& x, Marking m) {
  TautClass out(x.ambient());
  for (const auto& [form, term] : x.terms()) {
    if (!term.graph.is_interior())
      throw Unsupported("mul_psi is defined only on interior (single-vertex, edge-free) terms");
    DecoratedGraph g = term.graph;
    const int leg = g.find_leg(m);
    if (leg < 0) throw InvalidInput("marking " + m.to_string() + " is not a leg of the class");
    ++g.legs[leg].psi;
    out.add_term(g, term.coeff);
  }
  return out;
}

inline Rational coefficient_of(const TautClass& x, const CanonicalForm& form) {
  auto it = x.terms().find(form);
  return it == x.terms().end() ? Rational(0) : it->second.coeff;
}

inline Rational coefficient_of(const TautClass& x, const DecoratedGraph& g) {
  if (!validate(g)) return 0;
  return coefficient_of(x, canonical_form(g));
}

}  // namespace strata
