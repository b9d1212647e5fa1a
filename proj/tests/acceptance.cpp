// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "support.hpp"

namespace {

using namespace strata;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string str(const Rational& q) { return to_string(q); }

Outcome kappa_identity() {
  Outcome o;
  int checked = 0;
  for (int g = 3; g <= 12; ++g)
    for (int l = 0; l <= g - 2; ++l) {
      const auto r = verify_kappa_identity(g, l);
      o.require(r.equal, "identity fails at g=" + std::to_string(g) + " l=" + std::to_string(l));
      if (l == 0 || l == g - 2)
        o.require(r.lhs == kappa_product(g, 0, {g - 2}, faber_constant(g, l)),
                  "endpoint mismatch at g=" + std::to_string(g) + " l=" + std::to_string(l));
      ++checked;
    }
  if (o.ok) o.detail = std::to_string(checked) + " (g,l) pairs exact";
  return o;
}

Outcome constant_scan() {
  Outcome o;
  int checked = 0;
  for (int g = 3; g <= 60; ++g)
    for (int l = 0; l <= g - 2; ++l, ++checked) o.require(faber_constant(g, l) != 1, "c = 1 at g=" + std::to_string(g));
  o.require(faber_constant(3, 1) == 5, "c(3,1) = " + str(faber_constant(3, 1)));
  o.require(faber_constant(4, 1) == Rational(35, 3), "c(4,1) = " + str(faber_constant(4, 1)));
  for (int g = 3; g <= 60; ++g) o.require(faber_constant(g, 0) == 2 * g - 1, "c(g,0) != 2g-1");
  if (o.ok) o.detail = std::to_string(checked) + " values != 1; spot values 5, 35/3, 2g-1";
  return o;
}

Outcome two_by_two_system() {
  Outcome o;
  for (int g = 3; g <= 12; ++g) {
    const auto s = solve_coefficient_system(g, 1);
    const std::vector<std::vector<Rational>> want{{2 * g - 1, 1}, {1, 1}};
    o.require(s.failure.empty(), "g=" + std::to_string(g) + ": " + s.failure);
    o.require(s.matrix == want, "matrix differs at g=" + std::to_string(g));
    o.require(s.determinant == 2 * g - 2, "det differs at g=" + std::to_string(g));
    o.require(s.solved_zero, "system not solved at g=" + std::to_string(g));
  }
  if (o.ok) o.detail = "[[2g-1,1],[1,1]], det 2g-2 for g=3..12";
  return o;
}

Outcome several_markings_factor() {
  Outcome o;
  for (auto [g, n] : std::vector<std::pair<int, int>>{{6, 2}, {6, 3}, {9, 2}}) {
    const int k = floor_third(g);
    const auto s = solve_coefficient_system(g, n);
    const std::string at = "(" + std::to_string(g) + "," + std::to_string(n) + ")";
    o.require(s.solved_zero && s.images_distinct, at + ": " + s.failure);
    for (int l = 1; l <= n; ++l) {
      InteriorClass want(g, n - 1);
      if (l < n)
        want.add(InteriorMonomial({}, {{l, k}}), 2 * g - 2 + n - 1);
      else
        want.add(InteriorMonomial({k}, {}), 1);
      o.require(s.columns.at(l - 1).image == want, at + ": image of psi_" + std::to_string(l) + " differs");
    }
  }
  if (o.ok) o.detail = "factor 2g-2+n-1 at (6,2), (6,3), (9,2)";
  return o;
}

Outcome witness_instances() {
  Outcome o;
  std::ostringstream detail;
  auto check = [&](int g, int n, int k) {
    const auto t0 = Clock::now();
    const auto r = verify_witness_independence(g, n, k);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const std::string at = Instance{g, n, k}.to_string();
    o.require(r.pass, at + " failed");
    for (const auto& mv : r.monomials) {
      if (mv.branch != Branch::WitnessSplit) continue;
      o.require(mv.self_coefficient != 0, at + ": zero self-coefficient for " + mv.monomial.to_string());
      for (const auto& other : mv.others) o.require(other.coeff == 0, at + ": " + other.generator + " hits the witness");
      o.require(mv.others.size() == r.monomials.size() - 1 + r.boundary_encodings.size(), at + ": incomplete check list");
    }
    detail << at << " " << std::fixed;
    detail.precision(2);
    detail << secs << "s ";
    return secs;
  };
  for (auto [g, n, k] : std::vector<std::array<int, 3>>{{6, 0, 1}, {7, 0, 1}, {6, 1, 1}, {6, 2, 1}, {6, 0, 2}, {6, 1, 2}})
    check(g, n, k);
  o.require(check(9, 0, 2) < 600, "stretch instance exceeded 10 minutes");
  if (o.ok) o.detail = detail.str();
  return o;
}

Outcome r1_invariants() {
  Outcome o;
  std::mt19937_64 rng(testing::logged_seed("acceptance_r1", 20261016));
  testing::RandomGraphSpec spec;
  spec.max_vertices = 3;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_graph(rng, spec);
    const int pa = arithmetic_genus(g);
    TautClass x(AmbientSignature{pa, g.markings(), 1});
    x.add_term(g, 1);
    auto want = g.markings();
    want.insert(Marking::i());
    want.insert(Marking::j());
    const auto image = r_1(x);
    for (const auto& [form, term] : image.terms()) {
      o.require(static_cast<bool>(validate(term.graph)), "unstable output");
      o.require(arithmetic_genus(term.graph) == pa - 1, "genus not dropped by one");
      o.require(component_count(term.graph) <= 2, "more than two components");
      o.require(term.graph.markings() == want, "marking set not extended by exactly {i,j}");
      o.require(term.graph.degree() == g.degree(), "degree not preserved");
    }
  }
  // Linearity on random 3-term combinations of degree-2 graphs on (4,1).
  const auto pool = boundary_generators(4, 1, 2);
  const auto amb = AmbientSignature::connected(4, 1);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1), num(-9, 9), den(1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    TautClass x(amb), y(amb);
    for (int t = 0; t < 3; ++t) {
      x.add_term(pool[pick(rng)], Rational(num(rng), den(rng)));
      y.add_term(pool[pick(rng)], Rational(num(rng), den(rng)));
    }
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    o.require(r_1(scale(a, x) + scale(b, y)) == scale(a, r_1(x)) + scale(b, r_1(y)), "linearity fails");
  }
  if (o.ok) o.detail = "200 random graphs, 30 linear combinations";
  return o;
}

Outcome canonicalization() {
  Outcome o;
  std::mt19937_64 rng(testing::logged_seed("acceptance_canonical", 777));
  testing::RandomGraphSpec spec;
  spec.max_vertices = 5;
  spec.max_genus = 8;
  int relabelings = 0;
  for (int base = 0; base < 5; ++base) {
    const auto g = testing::random_graph(rng, spec);
    const auto form = canonical_form(g);
    for (int t = 0; t < 250; ++t, ++relabelings)
      o.require(canonical_form(testing::random_relabel(g, rng)) == form, "encoding changed under relabeling");
  }
  spec.max_vertices = 4;
  spec.max_decoration = 1;
  int pairs = 0, iso = 0;
  for (; pairs < 300; ++pairs) {
    const auto x = testing::random_graph(rng, spec);
    const auto y = pairs % 2 ? testing::random_relabel(x, rng) : testing::random_graph(rng, spec);
    const bool oracle = testing::brute_force_isomorphic(x, y);
    iso += oracle;
    o.require((canonical_form(x) == canonical_form(y)) == oracle, "disagrees with brute-force oracle");
  }
  if (o.ok)
    o.detail = std::to_string(relabelings) + " relabelings, " + std::to_string(pairs) + " oracle pairs (" +
               std::to_string(iso) + " isomorphic)";
  return o;
}

Outcome worked_value() {
  Outcome o;
  TautClass x(AmbientSignature::connected(2, 0));
  x.add_term(smooth_graph(2, 0), 1);
  TautClass want(invariance_target(x.ambient()));
  DecoratedGraph joined;
  joined.vertices = {{1, {}}};
  joined.legs = {{0, Marking::i(), 0}, {0, Marking::j(), 0}};
  want.add_term(joined, Rational(-1, 2));
  want.add_term(testing::two_vertex_graph(1, {}, {{Marking::i(), 0}}, 1, {}, {{Marking::j(), 0}}), Rational(-1, 2));
  o.require(r_1(x) == want, "r_1 of the fundamental class differs");
  if (o.ok) o.detail = "-1/2 [g1; i,j] - 1/2 ([g1; i] + [g1; j])";
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + STRATA_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_contract() {
  Outcome o;
  const auto files = testing::valid_fixtures();
  for (const auto& f : files) {
    bool ok = false;
    try {
      ok = testing::json_round_trips(io::read_json_file(f.string()));
    } catch (const std::exception&) {
    }
    o.require(ok, "round trip fails for " + f.filename().string());
  }
  const auto corrupt = (testing::fixture_dir() / "invalid" / "witness_table_corrupt.json").string();
  const int code = run_cli("verify --g 6 --n 0 --k 1 --witness-table \"" + corrupt + "\"");
  o.require(code == 1, "corrupted witness table gave exit " + std::to_string(code));
  o.require(run_cli("verify --g 6 --n 0 --k 1") == 0, "clean verify did not exit 0");
  if (o.ok) o.detail = std::to_string(files.size()) + " fixtures round-trip; corrupted witness table exits 1";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kappa identity", kappa_identity},
      {"constant scan", constant_scan},
      {"2x2 pushforward system", two_by_two_system},
      {"several-marking factor", several_markings_factor},
      {"witness verification", witness_instances},
      {"r_1 invariants", r1_invariants},
      {"canonicalization", canonicalization},
      {"worked r_1 value", worked_value},
      {"cli contract", cli_contract},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    failures += !o.ok;
    std::printf("[%s] %d. %s (%.2fs): %s\n", o.ok ? "PASS" : "FAIL", index, name.c_str(), secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
