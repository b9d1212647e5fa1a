#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "strata/strata.hpp"

namespace strata::testing {

inline std::filesystem::path fixture_dir() { return STRATA_FIXTURE_DIR; }

/// Valid fixture files (top level of the fixture directory), sorted.
inline std::vector<std::filesystem::path> valid_fixtures() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir()))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Parses a graph, class or interior-class document, re-serializes it, and
/// checks that the second parse gives an equal value and identical text.
inline bool json_round_trips(const io::json& j) {
  if (j.contains("ambient")) {
    const auto x = io::class_from_json(j);
    const auto text = io::to_json(x).dump();
    const auto y = io::class_from_json(io::json::parse(text));
    return x == y && io::to_json(y).dump() == text;
  }
  if (j.contains("terms")) {
    const auto x = io::interior_from_json(j);
    const auto text = io::to_json(x).dump();
    const auto y = io::interior_from_json(io::json::parse(text));
    return x == y && io::to_json(y).dump() == text;
  }
  const auto g = io::graph_from_json(j);
  const auto text = io::to_json(g).dump();
  const auto h = io::graph_from_json(io::json::parse(text));
  return g == h && canonical_form(g) == canonical_form(h) && io::to_json(h).dump() == text;
}

}  // namespace strata::testing
