#pragma once

// Instance files, result reports and the standalone verifier.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncdeg/apps.hpp"

namespace ncdeg::io {

using nlohmann::json;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// kinds: symbolic, weighted, bipartite, graph, matroid-pair, lines, bl
struct Instance {
  std::string kind;
  std::uint32_t p = 0;
  std::optional<WeightedSymbolicMatrix> matrix;  // every kind but bl
  std::optional<BipartiteInstance> bipartite;
  std::optional<GraphInstance> graph;
  std::optional<MatroidPairInstance> matroid_pair;
  std::optional<LineCollection> lines;
  std::optional<BLDatum> bl;

  const WeightedSymbolicMatrix& weighted() const;
};

// default_p is used when the file has no "field" entry
Instance parse_instance(const json& j, std::uint32_t default_p = 0);
Instance load_instance(const std::string& path, std::uint32_t default_p = 0);
json dump_instance(const Instance& inst);

json degree_json(const Degree& d);
Degree degree_from_json(const json& j);
json dual_to_json(const DualSolution& d, std::uint32_t p);
DualSolution dual_from_json(const json& j, std::uint32_t p);
json profile_to_json(const DegreeProfile& prof, std::uint32_t p);

struct VerifyResult {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> problems;
};
VerifyResult verify_report(const json& report, const Instance& inst);

}  // namespace ncdeg::io
