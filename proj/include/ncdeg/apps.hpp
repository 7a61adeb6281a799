#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncdeg/degdet.hpp"
#include "ncdeg/mvsp.hpp"

namespace ncdeg {

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& m) : std::invalid_argument(m) {}
};

// Bipartite graph on n + n vertices, edge (i, j) joins row i to column j.
struct BipartiteInstance {
  int n = 0;
  std::uint32_t p = 65521;
  std::vector<std::pair<int, int>> edges;  // 0-based, distinct
  std::vector<long long> weights;
  void validate() const;
};

// General graph on n vertices for the Tutte matrix.
struct GraphInstance {
  int n = 0;
  std::uint32_t p = 65521;
  std::vector<std::pair<int, int>> edges;  // 0-based, i != j
  std::vector<long long> weights;
  void validate() const;
};

// Vectors a_k, b_k are the rows of a, b (m x n).
struct MatroidPairInstance {
  int n = 0;
  std::uint32_t p = 5;
  MatF a, b;
  std::vector<long long> weights;
  int m() const { return static_cast<int>(a.rows()); }
  void validate() const;
};

// Lines H_k = span(a_k, b_k), rows of a and b.
struct LineCollection {
  int n = 0;
  std::uint32_t p = 3;
  MatF a, b;
  std::vector<long long> weights;
  int m() const { return static_cast<int>(a.rows()); }
  Subspace line(int k) const;
  void validate() const;
};

// Rank-2 maps B_j : K^n -> K^2 with exponents p_j.
struct BLDatum {
  int n = 0;
  std::uint32_t p = 3;
  std::vector<MatF> B;  // each 2 x n
  std::vector<Rational> exponents;
  void validate() const;
};

WeightedSymbolicMatrix build_edmonds(const BipartiteInstance& g);
WeightedSymbolicMatrix build_tutte(const GraphInstance& g);
WeightedSymbolicMatrix build_matroid_intersection(const MatroidPairInstance& mp);
WeightedSymbolicMatrix build_matroid_matching(const LineCollection& H);

// Constraints sum_k y_k dim(H_k cap X) <= dim X, deduplicated and with
// dominated rows dropped. Each entry keeps one X attaining it.
struct FmpConstraint {
  std::vector<int> coeff;
  int rhs = 0;
  Subspace X;
};
std::vector<FmpConstraint> fmp_constraints(const std::vector<Subspace>& lines, int n, std::uint32_t p,
                                           long cap = kSubspaceCap);

struct FmpResult {
  Rational value;
  std::vector<Rational> y;
};
// max c^T y over FMP(H); with ell, also 2 * 1^T y = ell (nullopt when infeasible).
FmpResult fmp_lp_oracle(const LineCollection& H, long cap = kSubspaceCap);
std::optional<FmpResult> fmp_lp_oracle(const LineCollection& H, int ell, long cap = kSubspaceCap);

struct FmmResult {
  Rational max;                               // Delta_max / 2
  std::vector<std::optional<Rational>> per_ell;  // Delta_l / 2, nullopt for -inf
  DegreeProfile profile;
};
FmmResult fmm_max_weight(const LineCollection& H, const AlgoOptions& opt = {});

struct BlResult {
  bool member = false;
  std::string reason;
  std::optional<Subspace> violated;  // X with sum p_j dim(H_j cap X) > dim X
  Rational lhs, rhs;
};
BlResult bl_membership_rank2(const BLDatum& d, long cap = kSubspaceCap);

constexpr int kBruteMaxN = 8;
constexpr int kBruteMaxM = 12;
Degree brute_force_matching(const BipartiteInstance& g, int ell);
Degree brute_force_matching(const MatroidPairInstance& mp, int ell);

}  // namespace ncdeg
