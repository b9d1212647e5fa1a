#pragma once

#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strata/strata.hpp"

namespace strata::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kResourceGuard = 3,
  kInternal = 4,
};

namespace detail {

inline void emit(const std::string& path, const io::json& j, std::ostream& out) {
  if (path.empty() || path == "-")
    out << j.dump(2) << '\n';
  else
    io::write_json_file(path, j);
}

inline std::map<std::string, DecoratedGraph> read_witness_table(const std::string& path) {
  const auto j = io::read_json_file(path);
  if (!j.is_object()) throw InvalidInput("witness table must map monomial text to graph objects");
  std::map<std::string, DecoratedGraph> table;
  for (const auto& [key, val] : j.items()) table[key] = io::graph_from_json(val, /*check=*/false);
  return table;
}

}  // namespace detail

/// Runs one command line. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Decorated stable graph calculus on moduli of curves", "strata"};
  app.require_subcommand(1);

  int g = 0, n = 0, k = 0, l = 1, max_edges = 0, min_edges = -1, forget = 0;
  std::string input, output, report_path, witness_table;
  bool experimental = false, recursive = false, text = false;

  auto* enumerate = app.add_subcommand("enumerate", "List connected stable graphs as JSON");
  enumerate->add_option("--g", g, "Arithmetic genus")->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--n", n, "Number of markings")->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--max-edges", max_edges, "Largest edge count")->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--min-edges", min_edges, "Smallest edge count (default: min(1, max-edges))");
  enumerate->add_option("--output,-o", output, "Output path (default stdout)");

  auto* r1 = app.add_subcommand("r1", "Apply the invariance operator r_l to a class file");
  r1->add_option("--input,-i", input, "Class JSON")->required();
  r1->add_option("--l", l, "Operator index (l >= 2 needs --experimental)")->check(CLI::PositiveNumber);
  r1->add_flag("--experimental", experimental, "Allow l >= 2");
  r1->add_option("--output,-o", output, "Output path (default stdout)");

  auto* push = app.add_subcommand("push", "Forgetful pushforward of an interior class file");
  push->add_option("--input,-i", input, "Interior class JSON")->required();
  push->add_option("--forget", forget, "Marking to forget")->required()->check(CLI::PositiveNumber);
  push->add_option("--output,-o", output, "Output path (default stdout)");

  auto* faber = app.add_subcommand("faber", "Print (2g-1)!!/((2l+1)!!(2g-2l-3)!!)");
  faber->add_option("--g", g)->required();
  faber->add_option("--l", l)->required();

  auto* identity = app.add_subcommand("kappa-identity", "Check pi_*(psi_1^{l+1} psi_2^{g-l-1}) = kappa_l kappa_{g-l-2} + kappa_{g-2}");
  identity->add_option("--g", g)->required();
  identity->add_option("--l", l)->required();

  auto* prop1 = app.add_subcommand("prop1", "Scan the constant c for every l <= g-2");
  prop1->add_option("--g", g)->required();

  auto* solve = app.add_subcommand("solve", "Pushforward linear system for the extremal monomials");
  solve->add_option("--g", g)->required();
  solve->add_option("--n", n)->required();

  auto* verify = app.add_subcommand("verify", "Replay the witness/pushforward case analysis for (g,n,k)");
  verify->add_option("--g", g)->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--report", report_path, "Write the JSON report here");
  verify->add_flag("--recursive", recursive, "Also verify the named induction instances");
  verify->add_flag("--text", text, "Print the human-readable table to stdout");
  verify->add_option("--witness-table", witness_table, "JSON object overriding witnesses by monomial text");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (enumerate->parsed()) {
      const auto graphs = enumerate_stable_graphs(g, n, max_edges, min_edges);
      io::json list = io::json::array();
      for (const auto& gr : graphs) list.push_back({{"encoding", canonical_form(gr).hex()}, {"graph", io::to_json(gr)}});
      detail::emit(output,
                   {{"g", g}, {"n", n}, {"max_edges", max_edges}, {"min_edges", min_edges < 0 ? std::min(1, max_edges) : min_edges},
                    {"count", graphs.size()}, {"graphs", list}},
                   out);
    } else if (r1->parsed()) {
      const auto x = io::class_from_json(io::read_json_file(input));
      detail::emit(output, io::to_json(r_l(x, l, {experimental})), out);
    } else if (push->parsed()) {
      const auto x = io::interior_from_json(io::read_json_file(input));
      detail::emit(output, io::to_json(forget_pushforward(x, forget)), out);
    } else if (faber->parsed()) {
      out << to_string(faber_constant(g, l)) << '\n';
    } else if (identity->parsed()) {
      const auto check = verify_kappa_identity(g, l);
      out << io::to_json(check).dump(2) << '\n';
      return check.equal ? kOk : kVerificationFailed;
    } else if (prop1->parsed()) {
      const auto r = proposition1_report(g);
      out << io::to_json(r).dump(2) << '\n';
      return r.all_c_differ_from_one ? kOk : kVerificationFailed;
    } else if (solve->parsed()) {
      const auto s = solve_coefficient_system(g, n);
      out << io::to_json(s).dump(2) << '\n';
      return s.solved_zero ? kOk : kVerificationFailed;
    } else if (verify->parsed()) {
      VerifyOptions opts;
      opts.recursive = recursive;
      if (!witness_table.empty()) opts.witness_overrides = detail::read_witness_table(witness_table);
      const auto report = verify_witness_independence(g, n, k, opts);
      if (!report_path.empty()) io::write_json_file(report_path, io::to_json(report));
      if (text)
        out << io::to_text(report);
      else if (report_path.empty())
        out << io::to_json(report).dump(2) << '\n';
      return report.pass ? kOk : kVerificationFailed;
    }
  } catch (const SizeGuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace strata::cli
