#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "strata/io.hpp"
#include "strata/verifier.hpp"

namespace strata::io {

inline json to_json(const Instance& i) { return {{"g", i.g}, {"n", i.n}, {"k", i.k}}; }

inline json to_json(const KappaIdentityCheck& c) {
  return {{"g", c.g}, {"l", c.l}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"equal", c.equal}};
}

inline json to_json(const Proposition1Report& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"l", e.l}, {"c", to_string(e.c)}, {"c_differs_from_one", e.c_differs_from_one}, {"relation", e.relation}});
  return {{"g", r.g}, {"entries", entries}, {"all_c_differ_from_one", r.all_c_differ_from_one}, {"assumption", r.assumption}};
}

inline json to_json(const CoefficientSystem& s) {
  json out = {{"g", s.g}, {"n", s.n}, {"K", s.big_k}, {"solved_zero", s.solved_zero},
              {"images_distinct", s.images_distinct}, {"assumptions", s.assumptions}};
  if (s.n == 1) {
    json m = json::array();
    for (const auto& row : s.matrix) {
      json r = json::array();
      for (const auto& c : row) r.push_back(to_string(c));
      m.push_back(r);
    }
    out["matrix"] = m;
    out["determinant"] = to_string(s.determinant);
  } else {
    json cols = json::array();
    for (const auto& c : s.columns) cols.push_back({{"source", c.source.to_string()}, {"image", to_json(c.image)}});
    out["columns"] = cols;
  }
  if (!s.failure.empty()) out["failure"] = s.failure;
  return out;
}

inline json to_json(const VerificationReport& r) {
  json monos = json::array();
  for (const auto& mv : r.monomials) {
    json m = {{"monomial", mv.monomial.to_string()}, {"branch", to_string(mv.branch)}, {"pass", mv.pass}};
    if (mv.witness) {
      m["witness"] = to_json(*mv.witness);
      m["witness_encoding"] = mv.witness_encoding;
    }
    if (mv.branch != Branch::PushforwardSystem) m["self_coefficient"] = to_string(mv.self_coefficient);
    json others = json::array();
    for (const auto& o : mv.others) others.push_back({{"generator", o.generator}, {"coeff", to_string(o.coeff)}});
    m["others"] = others;
    json relies = json::array();
    for (const auto& i : mv.relies_on) relies.push_back(to_json(i));
    m["relies_on"] = relies;
    if (!mv.notes.empty()) m["notes"] = mv.notes;
    if (!mv.failure.empty()) m["failure"] = mv.failure;
    monos.push_back(std::move(m));
  }
  json out = {{"instance", to_json(r.instance)},
              {"monomials", monos},
              {"boundary_generators", r.boundary_encodings},
              {"boundary_separation", r.boundary_separation},
              {"assumptions", r.assumptions},
              {"pass", r.pass}};
  if (r.proposition1) out["proposition1"] = to_json(*r.proposition1);
  if (r.kappa_identity) out["kappa_identity"] = to_json(*r.kappa_identity);
  if (r.system) out["coefficient_system"] = to_json(*r.system);
  if (!r.recursive.empty()) {
    json rec = json::array();
    for (const auto& c : r.recursive) rec.push_back({{"instance", to_json(c.instance)}, {"status", c.status}});
    out["recursive"] = rec;
  }
  return out;
}

/// monomial | branch | witness encoding | coefficient | verdict
inline std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "instance " << r.instance.to_string() << "  boundary generators: " << r.boundary_encodings.size()
     << "  boundary separation: " << (r.boundary_separation ? "yes" : "NO") << '\n';
  os << std::left << std::setw(24) << "monomial" << std::setw(20) << "branch" << std::setw(18) << "witness"
     << std::setw(12) << "coeff" << "verdict\n";
  for (const auto& mv : r.monomials) {
    std::string enc = mv.witness_encoding.empty() ? "-" : mv.witness_encoding.substr(0, 14) + "..";
    std::string coeff = mv.branch == Branch::PushforwardSystem ? "-" : to_string(mv.self_coefficient);
    os << std::left << std::setw(24) << mv.monomial.to_string() << std::setw(20) << to_string(mv.branch)
       << std::setw(18) << enc << std::setw(12) << coeff << (mv.pass ? "pass" : "FAIL");
    if (!mv.failure.empty()) os << "  (" << mv.failure << ")";
    os << '\n';
  }
  if (r.system && r.system->n == 1) {
    const auto& m = r.system->matrix;
    os << "system [[" << to_string(m[0][0]) << "," << to_string(m[0][1]) << "],[" << to_string(m[1][0]) << ","
       << to_string(m[1][1]) << "]] det " << to_string(r.system->determinant) << '\n';
  }
  for (const auto& c : r.recursive) os << "recursive " << c.instance.to_string() << ": " << c.status << '\n';
  for (const auto& a : r.assumptions) os << "assumes: " << a << '\n';
  os << "overall: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace strata::io
