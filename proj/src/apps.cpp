#include "ncdeg/apps.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "ncdeg/linalg.hpp"
#include "ncdeg/lp.hpp"
#include "ncdeg/util.hpp"

namespace ncdeg {

namespace {

std::size_t uz(long long i) { return static_cast<std::size_t>(i); }

void check_weights(std::size_t have, std::size_t want, const char* what) {
  if (have != want)
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(have) + " weights for " + std::to_string(want) +
                            " symbols");
}

MatF zero_mat(int n, std::uint32_t p) { return MatF::Constant(n, n, Gf(0, p)); }

MatF bound(const MatF& M, std::uint32_t p) { return M.unaryExpr([p](const Gf& x) { return x.bind(p); }); }

int intersect_dim(const Subspace& A, const Subspace& B) {
  if (!A.dim() || !B.dim()) return 0;
  MatF st(A.dim() + B.dim(), A.ambient);
  st.topRows(A.dim()) = A.basis;
  st.bottomRows(B.dim()) = B.basis;
  return A.dim() + B.dim() - rank(st);
}

}  // namespace

void BipartiteInstance::validate() const {
  check_weights(weights.size(), edges.size(), "bipartite");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw DimensionMismatch("edge (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") outside " +
                              std::to_string(n) + "x" + std::to_string(n));
    if (!seen.insert({i, j}).second)
      throw std::invalid_argument("repeated edge (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
}

void GraphInstance::validate() const {
  check_weights(weights.size(), edges.size(), "graph");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionMismatch("edge outside the vertex range");
    if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i + 1));
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      throw std::invalid_argument("repeated edge {" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}");
  }
}

void MatroidPairInstance::validate() const {
  if (a.rows() != b.rows() || a.cols() != n || b.cols() != n)
    throw DimensionMismatch("matroid pair: a and b must both be m x " + std::to_string(n));
  check_weights(weights.size(), uz(a.rows()), "matroid pair");
}

void LineCollection::validate() const {
  if (a.rows() != b.rows() || a.cols() != n || b.cols() != n)
    throw DimensionMismatch("lines: a and b must both be m x " + std::to_string(n));
  check_weights(weights.size(), uz(a.rows()), "lines");
  for (int k = 0; k < m(); ++k)
    if (line(k).dim() != 2) throw std::invalid_argument("line " + std::to_string(k + 1) + " is not 2-dimensional");
}

Subspace LineCollection::line(int k) const {
  MatF r(2, n);
  r.row(0) = a.row(k);
  r.row(1) = b.row(k);
  return span_rows(bound(r, p), n, p);
}

void BLDatum::validate() const {
  if (B.size() != exponents.size()) throw DimensionMismatch("bl: one exponent per map");
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (B[j].rows() != 2 || B[j].cols() != n) throw DimensionMismatch("bl: map " + std::to_string(j + 1) + " is not 2 x n");
    if (rank(bound(B[j], p)) != 2) throw std::invalid_argument("bl: map " + std::to_string(j + 1) + " is not surjective");
    if (exponents[j] < 0) throw std::invalid_argument("bl: negative exponent");
  }
}

WeightedSymbolicMatrix build_edmonds(const BipartiteInstance& g) {
  g.validate();
  std::vector<MatF> terms;
  for (auto [i, j] : g.edges) {
    MatF M = zero_mat(g.n, g.p);
    M(i, j) = Gf(1, g.p);
    terms.push_back(M);
  }
  return {make_symbolic(g.n, g.n, g.p, terms), g.weights};
}

WeightedSymbolicMatrix build_tutte(const GraphInstance& g) {
  g.validate();
  std::vector<MatF> terms;
  for (auto [i, j] : g.edges) {
    MatF M = zero_mat(g.n, g.p);
    M(i, j) = Gf(1, g.p);
    M(j, i) = Gf(-1, g.p);
    terms.push_back(M);
  }
  return {make_symbolic(g.n, g.n, g.p, terms), g.weights};
}

WeightedSymbolicMatrix build_matroid_intersection(const MatroidPairInstance& mp) {
  mp.validate();
  MatF a = bound(mp.a, mp.p), b = bound(mp.b, mp.p);
  std::vector<MatF> terms;
  for (int k = 0; k < mp.m(); ++k) terms.push_back(mul(MatF(a.row(k).transpose()), MatF(b.row(k))));
  return {make_symbolic(mp.n, mp.n, mp.p, terms), mp.weights};
}

WeightedSymbolicMatrix build_matroid_matching(const LineCollection& H) {
  H.validate();
  MatF a = bound(H.a, H.p), b = bound(H.b, H.p);
  std::vector<MatF> terms;
  for (int k = 0; k < H.m(); ++k) {
    MatF T = mul(MatF(a.row(k).transpose()), MatF(b.row(k)));
    T = T - transpose(T);
    for (int i = 0; i < H.n; ++i) T(i, i) = Gf(0, H.p);  // char 2
    terms.push_back(T);
  }
  return {make_symbolic(H.n, H.n, H.p, terms), H.weights};
}

std::vector<FmpConstraint> fmp_constraints(const std::vector<Subspace>& lines, int n, std::uint32_t p, long cap) {
  std::map<std::vector<int>, FmpConstraint> best;
  for (const Subspace& X : enumerate_subspaces(n, p, cap)) {
    std::vector<int> co;
    bool any = false;
    for (const Subspace& L : lines) {
      co.push_back(intersect_dim(L, X));
      any = any || co.back();
    }
    if (!any) continue;
    auto it = best.find(co);
    if (it == best.end() || X.dim() < it->second.rhs) best[co] = FmpConstraint{co, X.dim(), X};
  }
  std::vector<FmpConstraint> out;
  for (auto& [co, row] : best) {
    bool dominated = false;
    for (auto& [co2, row2] : best) {
      if (co2 == co || row2.rhs > row.rhs) continue;
      bool ge = true;
      for (std::size_t k = 0; k < co.size(); ++k) ge = ge && co2[k] >= co[k];
      if (ge) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(row);
  }
  return out;
}

namespace {

std::optional<FmpResult> fmp_solve(const LineCollection& H, std::optional<int> ell, long cap) {
  H.validate();
  std::vector<Subspace> lines;
  for (int k = 0; k < H.m(); ++k) lines.push_back(H.line(k));
  std::vector<FmpConstraint> cons = fmp_constraints(lines, H.n, H.p, cap);
  RatRows A;
  std::vector<Rational> b;
  for (const auto& c : cons) {
    std::vector<Rational> row;
    for (int v : c.coeff) row.emplace_back(v);
    A.push_back(std::move(row));
    b.emplace_back(c.rhs);
  }
  std::vector<Rational> obj;
  for (long long w : H.weights) obj.emplace_back(w);
  RatRows Ae;
  std::vector<Rational> be;
  if (ell) {
    Ae.push_back(std::vector<Rational>(uz(H.m()), Rational(2)));
    be.emplace_back(*ell);
  }
  LpResult r = lp_maximize(obj, A, b, Ae, be);
  if (r.status == LpResult::Status::Infeasible) return std::nullopt;
  if (r.status == LpResult::Status::Unbounded) throw std::logic_error("fmp: lines bound y, LP cannot be unbounded");
  return FmpResult{r.value, r.x};
}

}  // namespace

FmpResult fmp_lp_oracle(const LineCollection& H, long cap) {
  if (H.m() == 0) return {Rational(0), {}};
  return *fmp_solve(H, std::nullopt, cap);
}

std::optional<FmpResult> fmp_lp_oracle(const LineCollection& H, int ell, long cap) {
  if (ell < 0 || ell > H.n) throw BadCardinality("ell out of range");
  if (ell == 0) return FmpResult{Rational(0), std::vector<Rational>(uz(H.m()), Rational(0))};
  if (H.m() == 0) return std::nullopt;
  return fmp_solve(H, ell, cap);
}

FmmResult fmm_max_weight(const LineCollection& H, const AlgoOptions& opt) {
  FmmResult r;
  r.profile = symmetric_hungarian(build_matroid_matching(H), opt);
  r.max = 0;
  for (const Degree& v : r.profile.values) {
    if (v.finite()) {
      Rational h(v.value(), 2);
      r.per_ell.emplace_back(h);
      r.max = std::max(r.max, h);
    } else {
      r.per_ell.emplace_back(std::nullopt);
    }
  }
  return r;
}

BlResult bl_membership_rank2(const BLDatum& d, long cap) {
  d.validate();
  BlResult r;
  Rational total = 0;
  for (const Rational& x : d.exponents) total += x;
  r.lhs = 2 * total;
  r.rhs = d.n;
  if (r.lhs != r.rhs) {
    r.reason = "dimension: 2 * sum p_j = " + to_string(r.lhs) + " but n = " + std::to_string(d.n);
    return r;
  }
  std::vector<Subspace> H;
  for (const MatF& B : d.B) H.push_back(span_rows(bound(B, d.p), d.n, d.p));
  for (const Subspace& X : enumerate_subspaces(d.n, d.p, cap)) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < H.size(); ++j) lhs += d.exponents[j] * intersect_dim(H[j], X);
    if (lhs > X.dim()) {
      r.violated = X;
      r.lhs = lhs;
      r.rhs = X.dim();
      r.reason = "subspace: sum p_j dim(H_j cap X) = " + to_string(lhs) + " > dim X = " + std::to_string(X.dim());
      return r;
    }
  }
  r.member = true;
  r.reason = "all " + std::to_string(count_subspaces(d.n, d.p)) + " subspaces pass";
  return r;
}

Degree brute_force_matching(const BipartiteInstance& g, int ell) {
  g.validate();
  if (g.n > kBruteMaxN) throw CapExceeded("brute force: n > " + std::to_string(kBruteMaxN));
  if (ell < 0 || ell > g.n) throw BadCardinality("ell out of range");
  const long long NONE = std::numeric_limits<long long>::min();
  std::vector<std::vector<long long>> w(uz(g.n), std::vector<long long>(uz(g.n), NONE));
  for (std::size_t k = 0; k < g.edges.size(); ++k) w[uz(g.edges[k].first)][uz(g.edges[k].second)] = g.weights[k];
  // best[mask]: heaviest matching of the rows seen so far onto column set mask
  std::vector<long long> best(std::size_t(1) << g.n, NONE);
  best[0] = 0;
  for (int i = 0; i < g.n; ++i) {
    std::vector<long long> nb = best;
    for (std::size_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] == NONE) continue;
      for (int j = 0; j < g.n; ++j) {
        if ((mask >> j & 1) || w[uz(i)][uz(j)] == NONE) continue;
        std::size_t m2 = mask | (std::size_t(1) << j);
        nb[m2] = std::max(nb[m2], best[mask] + w[uz(i)][uz(j)]);
      }
    }
    best = std::move(nb);
  }
  Degree out = Degree::neg_inf();
  for (std::size_t mask = 0; mask < best.size(); ++mask)
    if (best[mask] != NONE && __builtin_popcountll(mask) == ell) out = max(out, Degree(best[mask]));
  return out;
}

Degree brute_force_matching(const MatroidPairInstance& mp, int ell) {
  mp.validate();
  if (mp.n > kBruteMaxN || mp.m() > kBruteMaxM)
    throw CapExceeded("brute force: needs n <= " + std::to_string(kBruteMaxN) + " and m <= " + std::to_string(kBruteMaxM));
  if (ell < 0 || ell > mp.n) throw BadCardinality("ell out of range");
  if (ell == 0) return Degree(0);
  MatF a = bound(mp.a, mp.p), b = bound(mp.b, mp.p);
  Degree out = Degree::neg_inf();
  for (const auto& I : subsets(mp.m(), ell)) {
    MatF sa(ell, mp.n), sb(ell, mp.n);
    long long w = 0;
    for (int q = 0; q < ell; ++q) {
      sa.row(q) = a.row(I[uz(q)]);
      sb.row(q) = b.row(I[uz(q)]);
      w += mp.weights[uz(I[uz(q)])];
    }
    if (rank(sa) == ell && rank(sb) == ell) out = max(out, Degree(w));
  }
  return out;
}

}  // namespace ncdeg
