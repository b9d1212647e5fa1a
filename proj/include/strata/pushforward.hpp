#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/errors.hpp"
#include "strata/rational.hpp"
#include "strata/taut_class.hpp"

// Forgetful pushforward on κ/ψ monomials in the quotient of R*(M̄_{g,n}) by
// the boundary. Upstairs ψ_q (q != p) is identified with the pullback of the
// downstairs ψ_q; the correction is a boundary class and vanishes here.

namespace strata {

/// κ^I ψ^J. κ indices are >= 1 and sorted; ψ exponents are > 0.
struct InteriorMonomial {
  std::vector<int> kappa;
  std::map<int, int> psi;

  InteriorMonomial() = default;
  InteriorMonomial(std::vector<int> k, std::map<int, int> p) : kappa(std::move(k)), psi(std::move(p)) {
    normalize();
  }

  void normalize() {
    std::sort(kappa.begin(), kappa.end());
    std::erase_if(psi, [](const auto& kv) { return kv.second == 0; });
  }

  int degree() const {
    int d = 0;
    for (int k : kappa) d += k;
    for (const auto& [m, e] : psi) d += e;
    return d;
  }

  int psi_exponent(int marking) const {
    auto it = psi.find(marking);
    return it == psi.end() ? 0 : it->second;
  }

  /// "1", "kappa_2", "kappa_1^2 psi_1", ...
  std::string to_string() const {
    std::string out;
    auto sep = [&out] {
      if (!out.empty()) out += ' ';
    };
    for (std::size_t s = 0; s < kappa.size();) {
      std::size_t e = s;
      while (e < kappa.size() && kappa[e] == kappa[s]) ++e;
      sep();
      out += "kappa_" + std::to_string(kappa[s]);
      if (e - s > 1) out += "^" + std::to_string(e - s);
      s = e;
    }
    for (const auto& [m, exp] : psi) {
      sep();
      out += "psi_" + std::to_string(m);
      if (exp > 1) out += "^" + std::to_string(exp);
    }
    return out.empty() ? "1" : out;
  }

  auto operator<=>(const InteriorMonomial&) const = default;
};

/// Class in R*(M̄_{g,n}) / R*(∂M̄_{g,n}) written in κ/ψ monomials.
class InteriorClass {
 public:
  InteriorClass() = default;
  InteriorClass(int g, int n) : g_(g), n_(n) {
    if (n < 0 || 2 * g - 2 + n <= 0)
      throw InvalidInput("unstable ambient (g=" + std::to_string(g) + ", n=" + std::to_string(n) + ")");
  }

  int genus() const { return g_; }
  int markings() const { return n_; }
  const std::map<InteriorMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(InteriorMonomial m, const Rational& c) {
    m.normalize();
    for (int k : m.kappa)
      if (k < 1) throw InvalidInput("kappa index must be >= 1 (kappa_0 is a scalar)");
    for (const auto& [mark, e] : m.psi)
      if (mark < 1 || mark > n_ || e < 0) throw InvalidInput("psi_" + std::to_string(mark) + " not valid on this ambient");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const InteriorMonomial& m) const {
    InteriorMonomial key = m;
    key.normalize();
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  InteriorClass& operator+=(const InteriorClass& other) {
    if (other.g_ != g_ || other.n_ != n_) throw SignatureMismatch("interior classes on different spaces");
    for (const auto& [m, c] : other.terms_) add(m, c);
    return *this;
  }

  InteriorClass& operator*=(const Rational& c) {
    if (c == 0) terms_.clear();
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
  }

  bool operator==(const InteriorClass&) const = default;

 private:
  int g_ = 0;
  int n_ = 0;
  std::map<InteriorMonomial, Rational> terms_;
};

inline InteriorClass operator+(InteriorClass x, const InteriorClass& y) { return x += y; }
inline InteriorClass operator*(const Rational& c, InteriorClass x) { return x *= c; }

/// 2g-2+n: the value κ_0 takes on M̄_{g,n}.
inline int kappa_zero(int g, int n) { return 2 * g - 2 + n; }

/// Product of κ_{indices} on (g, n); every index 0 is replaced by the scalar κ_0.
inline InteriorClass kappa_product(int g, int n, const std::vector<int>& indices, const Rational& coeff = 1) {
  InteriorClass out(g, n);
  Rational c = coeff;
  std::vector<int> kept;
  for (int k : indices) {
    if (k < 0) throw InvalidInput("negative kappa index");
    if (k == 0)
      c *= kappa_zero(g, n);
    else
      kept.push_back(k);
  }
  out.add(InteriorMonomial(std::move(kept), {}), c);
  return out;
}

/// Pushforward along the map forgetting marking p; markings above p shift
/// down by one.
///
/// Each upstairs κ_a is expanded as π^*κ_a + ψ_p^a; after expansion a total
/// ψ_p-power b contributes nothing (b = 0), the scalar κ_0 of the target
/// (b = 1), or a new factor κ_{b-1} (b >= 2).
inline InteriorClass forget_pushforward(const InteriorClass& x, int p) {
  const int g = x.genus(), n = x.markings();
  if (p < 1 || p > n) throw InvalidInput("marking " + std::to_string(p) + " is not a marking of the class");
  InteriorClass out(g, n - 1);  // throws on an unstable target
  const int k0 = kappa_zero(g, n - 1);
  for (const auto& [mono, coeff] : x.terms()) {
    std::map<int, int> rest;
    for (const auto& [m, e] : mono.psi)
      if (m != p) rest[m > p ? m - 1 : m] = e;
    const int q = static_cast<int>(mono.kappa.size());
    for (unsigned mask = 0; mask < (1u << q); ++mask) {
      int b = mono.psi_exponent(p);
      std::vector<int> kappa;
      for (int t = 0; t < q; ++t) {
        if (mask >> t & 1u)
          b += mono.kappa[t];
        else
          kappa.push_back(mono.kappa[t]);
      }
      if (b == 0) continue;
      Rational c = coeff;
      if (b == 1)
        c *= k0;
      else
        kappa.push_back(b - 1);
      out.add(InteriorMonomial(std::move(kappa), rest), c);
    }
  }
  return out;
}

/// Pullback of y on (g, n-1) along the map forgetting p; markings >= p shift
/// up. Each κ_a pulls back to κ_a - ψ_p^a, ψ_m to ψ_m.
inline InteriorClass lift(const InteriorClass& y, int p) {
  const int n = y.markings() + 1;
  if (p < 1 || p > n) throw InvalidInput("lift marking out of range");
  InteriorClass out(y.genus(), n);
  for (const auto& [mono, c] : y.terms()) {
    std::map<int, int> psi;
    for (const auto& [m, e] : mono.psi) psi[m >= p ? m + 1 : m] = e;
    const int q = static_cast<int>(mono.kappa.size());
    for (unsigned mask = 0; mask < (1u << q); ++mask) {
      std::vector<int> kappa;
      std::map<int, int> term_psi = psi;
      Rational sign = c;
      for (int t = 0; t < q; ++t) {
        if (mask >> t & 1u) {
          term_psi[p] += mono.kappa[t];
          sign = -sign;
        } else {
          kappa.push_back(mono.kappa[t]);
        }
      }
      out.add(InteriorMonomial(std::move(kappa), std::move(term_psi)), sign);
    }
  }
  return out;
}

/// Multiplies by ψ_p.
inline InteriorClass mul_psi(const InteriorClass& x, int p) {
  if (p < 1 || p > x.markings()) throw InvalidInput("marking out of range");
  InteriorClass out(x.genus(), x.markings());
  for (const auto& [mono, c] : x.terms()) {
    InteriorMonomial up = mono;
    ++up.psi[p];
    out.add(std::move(up), c);
  }
  return out;
}

/// Reads an interior TautClass (every term a single edge-free
/// vertex on M̄_{g,n} with markings 1..n) as κ/ψ monomials.
inline InteriorClass to_interior(const TautClass& x) {
  const auto& amb = x.ambient();
  const int n = static_cast<int>(amb.markings.size());
  if (amb.max_components != 1 || amb.markings != AmbientSignature::connected(amb.genus, n).markings)
    throw InvalidInput("interior classes need the ambient M̄_{g,n} with markings 1..n");
  InteriorClass out(amb.genus, n);
  for (const auto& [form, term] : x.terms()) {
    if (!term.graph.is_interior()) throw Unsupported("term with edges has no interior monomial form");
    std::map<int, int> psi;
    for (const auto& leg : term.graph.legs) psi[leg.marking.label()] = leg.psi;
    out.add(InteriorMonomial(term.graph.vertices[0].kappa, psi), term.coeff);
  }
  return out;
}

inline TautClass to_taut_class(const InteriorClass& x) {
  TautClass out(AmbientSignature::connected(x.genus(), x.markings()));
  for (const auto& [mono, c] : x.terms()) out += scale(c, monomial_class(x.genus(), x.markings(), mono.kappa, mono.psi));
  return out;
}

inline std::optional<int> degree(const InteriorClass& x) {
  if (x.is_zero()) throw InvalidInput("degree of the zero class is undefined");
  std::optional<int> d;
  for (const auto& [m, c] : x.terms()) {
    if (d && *d != m.degree()) return std::nullopt;
    d = m.degree();
  }
  return d;
}

// ---------------------------------------------------------------------------
// The constant c = (2g-1)!! / ((2l+1)!! (2g-2l-3)!!) and the κ identities
// built around it.

inline Rational faber_constant(int g, int l) {
  if (g < 2 || l < 0 || l > g - 2)
    throw InvalidInput("faber_constant needs g >= 2 and 0 <= l <= g-2 (got g=" + std::to_string(g) +
                       ", l=" + std::to_string(l) + ")");
  return Rational(double_factorial(2 * g - 1), double_factorial(2 * l + 1) * double_factorial(2 * g - 2 * l - 3));
}

struct KappaIdentityCheck {
  int g = 0;
  int l = 0;
  InteriorClass lhs;  ///< π_*(ψ_1^{l+1} ψ_2^{g-l-1}) on M_g
  InteriorClass rhs;  ///< κ_l κ_{g-l-2} + κ_{g-2}
  bool equal = false;
};

/// Pushes ψ_1^{l+1} ψ_2^{g-l-1} from (g,2) down to (g,0) and compares with
/// κ_l κ_{g-l-2} + κ_{g-2}, where κ_0 means 2g-2.
inline KappaIdentityCheck verify_kappa_identity(int g, int l) {
  if (g < 3 || l < 0 || l > g - 2)
    throw InvalidInput("kappa identity needs g >= 3 and 0 <= l <= g-2");
  InteriorClass start(g, 2);
  start.add(InteriorMonomial({}, {{1, l + 1}, {2, g - l - 1}}), 1);
  KappaIdentityCheck out;
  out.g = g;
  out.l = l;
  out.lhs = forget_pushforward(forget_pushforward(start, 2), 1);
  out.rhs = kappa_product(g, 0, {l, g - l - 2}) + kappa_product(g, 0, {g - 2});
  out.equal = out.lhs == out.rhs;
  return out;
}

struct Proposition1Entry {
  int l = 0;
  Rational c;
  bool c_differs_from_one = false;
  /// (c-1) κ_{g-2} = κ_l κ_{g-l-2}
  std::string relation;
};

struct Proposition1Report {
  int g = 0;
  std::vector<Proposition1Entry> entries;
  bool all_c_differ_from_one = true;
  /// The nonvanishing of κ_l rests on κ_{g-2} != 0, which is assumed.
  std::string assumption = "kappa_{g-2} != 0 in R^{g-2}(M_g) (cited, not verified)";
};

inline Proposition1Report proposition1_report(int g) {
  if (g < 3) throw InvalidInput("proposition1_report needs g >= 3");
  Proposition1Report r;
  r.g = g;
  for (int l = 0; l <= g - 2; ++l) {
    Proposition1Entry e;
    e.l = l;
    e.c = faber_constant(g, l);
    e.c_differs_from_one = e.c != 1;
    e.relation = "(" + to_string(e.c - 1) + ") kappa_" + std::to_string(g - 2) + " = kappa_" + std::to_string(l) +
                 " kappa_" + std::to_string(g - l - 2);
    r.all_c_differ_from_one = r.all_c_differ_from_one && e.c_differs_from_one;
    r.entries.push_back(std::move(e));
  }
  return r;
}

}  // namespace strata
