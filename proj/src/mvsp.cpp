#include "ncdeg/mvsp.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "ncdeg/linalg.hpp"
#include "ncdeg/util.hpp"

namespace ncdeg {

namespace {

std::size_t uz(long long i) { return static_cast<std::size_t>(i); }

MatF bind_all(const MatF& M, std::uint32_t p) {
  return M.unaryExpr([p](const Gf& x) { return x.bind(p); });
}

MatF stack_rows(const MatF& A, const MatF& B) {
  MatF C(A.rows() + B.rows(), std::max(A.cols(), B.cols()));
  if (A.rows()) C.topRows(A.rows()) = A;
  if (B.rows()) C.bottomRows(B.rows()) = B;
  return C;
}

MatF select_rows(const MatF& M, const std::vector<int>& idx) {
  MatF out(static_cast<Eigen::Index>(idx.size()), M.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = M.row(idx[i]);
  return out;
}

// independence of the rows idx of M
bool independent(const MatF& M, const std::vector<int>& idx) {
  if (idx.empty()) return true;
  return rank(select_rows(M, idx)) == static_cast<int>(idx.size());
}

}  // namespace

Subspace span_rows(const MatF& rows, int ambient, std::uint32_t p) {
  Subspace S;
  S.ambient = ambient;
  S.p = p;
  if (rows.rows() == 0) {
    S.basis = MatF(0, ambient);
    return S;
  }
  std::vector<int> piv;
  MatF R = rref(bind_all(rows, p), &piv);
  S.basis = bind_all(R.topRows(static_cast<Eigen::Index>(piv.size())), p);
  return S;
}

Subspace full_space(int n, std::uint32_t p) { return span_rows(bind_all(identity<Gf>(n), p), n, p); }

Subspace zero_space(int n, std::uint32_t p) { return span_rows(MatF(0, n), n, p); }

Subspace annihilator(const Subspace& W) {
  if (W.dim() == 0) return full_space(W.ambient, W.p);
  return span_rows(nullspace(W.basis), W.ambient, W.p);
}

bool Subspace::contains(const Subspace& o) const {
  if (o.dim() == 0) return true;
  return rank(stack_rows(basis, o.basis)) == dim();
}

FRWitness witness_from_subspaces(const Subspace& U, const Subspace& V, bool dominant) {
  FRWitness w;
  w.S = bind_all(complete_basis(U.basis, U.ambient), U.p);
  w.T = bind_all(transpose(complete_basis(V.basis, V.ambient)), V.p);
  w.r = U.dim();
  w.s = V.dim();
  w.U = U;
  w.V = V;
  w.dominant = dominant;
  return w;
}

bool verify_witness(const SymbolicMatrix& A, const FRWitness& w) {
  if (w.S.rows() != A.rows || w.S.cols() != A.rows || w.T.rows() != A.cols || w.T.cols() != A.cols) return false;
  if (rank(w.S) != A.rows || rank(w.T) != A.cols) return false;
  for (const MatF& Ak : A.terms) {
    MatF M = mul(mul(w.S, Ak), w.T);
    for (int i = 0; i < w.r; ++i)
      for (int j = 0; j < w.s; ++j)
        if (!M(i, j).is_zero()) return false;
  }
  return true;
}

MatF BruhatTriple::pi_matrix() const {
  std::uint32_t p = U.rows() ? U(0, 0).p() : 0;
  return bind_all(permutation_matrix<Gf>(pi), p);
}

BruhatTriple bruhat(const MatF& S) {
  if (S.rows() != S.cols()) throw std::invalid_argument("bruhat: not square");
  Eigen::Index n = S.rows();
  std::uint32_t p = 0;
  for (Eigen::Index i = 0; i < n && !p; ++i)
    for (Eigen::Index j = 0; j < n && !p; ++j) p = S(i, j).p();
  MatF M = S;
  MatF L = bind_all(identity<Gf>(n), p), U = L;
  std::vector<int> pi(uz(n), -1);
  // invariant: S = L * M * U
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = -1;
    for (Eigen::Index c = 0; c < n; ++c)
      if (!M(i, c).is_zero()) {
        j = c;
        break;
      }
    if (j < 0) throw Singular();
    pi[uz(i)] = static_cast<int>(j);
    Gf piv = M(i, j);
    for (Eigen::Index r = i + 1; r < n; ++r) {
      if (M(r, j).is_zero()) continue;
      Gf f = M(r, j) / piv;
      M.row(r) -= f * M.row(i);
      L.col(i) += f * L.col(r);
    }
    for (Eigen::Index c = j + 1; c < n; ++c) {
      if (M(i, c).is_zero()) continue;
      Gf g = M(i, c) / piv;
      M.col(c) -= g * M.col(j);
      U.row(j) += g * U.row(c);
    }
  }
  // M = diag(d) * pi; fold d into L
  for (Eigen::Index i = 0; i < n; ++i) L.col(i) *= M(i, pi[uz(i)]);
  return {bind_all(L, p), pi, bind_all(U, p)};
}

int nc_rank(const SymbolicMatrix& A, Rng& rng, int trials) {
  int n = std::max(A.rows, A.cols);
  int d = std::max(n - 1, 1);
  int r = blowup_rank_sample(A, d, trials, rng);
  // a short rank is a failed trial; retry a few times before flooring
  for (int extra = 0; r % d && extra < 4 * trials; ++extra) r = std::max(r, blowup_rank_sample(A, d, 1, rng));
  return r / d;
}

long count_subspaces(int n, std::uint32_t p) {
  long total = 0;
  const long big = std::numeric_limits<long>::max() / 4;
  for (int k = 0; k <= n; ++k)
    for (const auto& piv : subsets(n, k)) {
      int free = 0;
      for (int i = 0; i < k; ++i)
        for (int j = piv[uz(i)] + 1; j < n; ++j)
          if (!std::binary_search(piv.begin(), piv.end(), j)) ++free;
      long c = 1;
      for (int f = 0; f < free && c < big; ++f) c *= static_cast<long>(p);
      total = std::min(big, total + c);
    }
  return total;
}

std::vector<Subspace> enumerate_subspaces(int n, std::uint32_t p, long cap) {
  long total = count_subspaces(n, p);
  if (total > cap)
    throw EnumerationCapExceeded("GF(" + std::to_string(p) + ")^" + std::to_string(n) + " has " +
                                 std::to_string(total) + " subspaces, cap is " + std::to_string(cap));
  std::vector<Subspace> out;
  out.reserve(uz(total));
  for (int k = 0; k <= n; ++k)
    for (const auto& piv : subsets(n, k)) {
      std::vector<std::pair<int, int>> free;
      for (int i = 0; i < k; ++i)
        for (int j = piv[uz(i)] + 1; j < n; ++j)
          if (!std::binary_search(piv.begin(), piv.end(), j)) free.emplace_back(i, j);
      std::vector<std::uint32_t> digit(free.size(), 0);
      while (true) {
        MatF B = MatF::Constant(k, n, Gf(0, p));
        for (int i = 0; i < k; ++i) B(i, piv[uz(i)]) = Gf(1, p);
        for (std::size_t f = 0; f < free.size(); ++f) B(free[f].first, free[f].second) = Gf(digit[f], p);
        Subspace S;
        S.ambient = n;
        S.p = p;
        S.basis = B;
        out.push_back(S);
        std::size_t f = 0;
        while (f < digit.size() && ++digit[f] == p) digit[f++] = 0;
        if (f == digit.size()) break;
      }
    }
  return out;
}

FRWitness mvsp_exhaustive(const SymbolicMatrix& A, bool want_dominant, long cap) {
  A.validate();
  auto cands = enumerate_subspaces(A.rows, A.p, cap);
  std::vector<int> vdim(cands.size());
  parallel_for(cands.size(), [&](std::size_t i) {
    const Subspace& U = cands[i];
    if (U.dim() == 0 || A.terms.empty()) {
      vdim[i] = A.cols;
      return;
    }
    MatF St(static_cast<Eigen::Index>(U.dim()) * A.m(), A.cols);
    for (int k = 0; k < A.m(); ++k) St.middleRows(static_cast<Eigen::Index>(k) * U.dim(), U.dim()) = mul(U.basis, A.terms[uz(k)]);
    vdim[i] = A.cols - rank(St);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    int si = cands[i].dim() + vdim[i], sb = cands[best].dim() + vdim[best];
    if (si > sb || (want_dominant && si == sb && cands[i].dim() > cands[best].dim())) best = i;
  }
  const Subspace& U = cands[best];
  Subspace V;
  if (U.dim() == 0 || A.terms.empty()) {
    V = full_space(A.cols, A.p);
  } else {
    MatF St(static_cast<Eigen::Index>(U.dim()) * A.m(), A.cols);
    for (int k = 0; k < A.m(); ++k) St.middleRows(static_cast<Eigen::Index>(k) * U.dim(), U.dim()) = mul(U.basis, A.terms[uz(k)]);
    V = span_rows(nullspace(St), A.cols, A.p);
  }
  return witness_from_subspaces(U, V, want_dominant);
}

FRWitness mvsp_bipartite(const BipartiteGraph& G, std::uint32_t p) {
  std::vector<std::vector<int>> adj(uz(G.rows)), radj(uz(G.cols));
  for (auto [i, j] : G.edges) {
    if (i < 0 || i >= G.rows || j < 0 || j >= G.cols) throw std::out_of_range("edge outside the vertex sets");
    adj[uz(i)].push_back(j);
    radj[uz(j)].push_back(i);
  }
  std::vector<int> mr(uz(G.rows), -1), mc(uz(G.cols), -1);
  for (int i = 0; i < G.rows; ++i) {
    std::vector<char> seen(uz(G.cols), 0);
    std::function<bool(int)> aug = [&](int u) {
      for (int v : adj[uz(u)]) {
        if (seen[uz(v)]) continue;
        seen[uz(v)] = 1;
        if (mc[uz(v)] < 0 || aug(mc[uz(v)])) {
          mc[uz(v)] = u;
          mr[uz(u)] = v;
          return true;
        }
      }
      return false;
    };
    aug(i);
  }
  // alternating reachability from unmatched columns
  std::vector<char> zr(uz(G.rows), 0), zc(uz(G.cols), 0);
  std::deque<int> q;
  for (int j = 0; j < G.cols; ++j)
    if (mc[uz(j)] < 0) {
      zc[uz(j)] = 1;
      q.push_back(j);
    }
  while (!q.empty()) {
    int j = q.front();
    q.pop_front();
    for (int i : radj[uz(j)]) {
      if (zr[uz(i)]) continue;
      zr[uz(i)] = 1;
      int j2 = mr[uz(i)];
      if (j2 >= 0 && !zc[uz(j2)]) {
        zc[uz(j2)] = 1;
        q.push_back(j2);
      }
    }
  }
  std::vector<int> rorder, corder;
  for (int i = 0; i < G.rows; ++i)
    if (!zr[uz(i)]) rorder.push_back(i);
  int r = static_cast<int>(rorder.size());
  for (int i = 0; i < G.rows; ++i)
    if (zr[uz(i)]) rorder.push_back(i);
  for (int j = 0; j < G.cols; ++j)
    if (zc[uz(j)]) corder.push_back(j);
  int s = static_cast<int>(corder.size());
  for (int j = 0; j < G.cols; ++j)
    if (!zc[uz(j)]) corder.push_back(j);
  FRWitness w;
  w.S = bind_all(permutation_matrix<Gf>(rorder), p);
  w.T = bind_all(transpose(permutation_matrix<Gf>(corder)), p);
  w.r = r;
  w.s = s;
  w.U = span_rows(w.S.topRows(r), G.rows, p);
  w.V = span_rows(transpose(w.T).topRows(s), G.cols, p);
  w.dominant = true;
  return w;
}

std::vector<int> matroid_intersection(const MatF& Am, const MatF& Bm, std::vector<int>* reach_sink) {
  int m = static_cast<int>(Am.rows());
  if (Bm.rows() != m) throw std::invalid_argument("matroid_intersection: ground sets differ");
  std::vector<char> in(uz(m), 0);
  auto current = [&] {
    std::vector<int> J;
    for (int k = 0; k < m; ++k)
      if (in[uz(k)]) J.push_back(k);
    return J;
  };
  while (true) {
    std::vector<int> J = current();
    auto with = [&](int add, int drop) {
      std::vector<int> s;
      for (int k : J)
        if (k != drop) s.push_back(k);
      s.push_back(add);
      std::sort(s.begin(), s.end());
      return s;
    };
    std::vector<char> src(uz(m), 0), snk(uz(m), 0);
    std::vector<std::vector<int>> out(uz(m));
    for (int x = 0; x < m; ++x) {
      if (in[uz(x)]) continue;
      src[uz(x)] = independent(Am, with(x, -1));
      snk[uz(x)] = independent(Bm, with(x, -1));
      for (int y : J) {
        auto s = with(x, y);
        if (independent(Am, s)) out[uz(y)].push_back(x);
        if (independent(Bm, s)) out[uz(x)].push_back(y);
      }
    }
    // shortest path from sources to sinks
    std::vector<int> prev(uz(m), -2);
    std::deque<int> q;
    for (int x = 0; x < m; ++x)
      if (src[uz(x)]) {
        prev[uz(x)] = -1;
        q.push_back(x);
      }
    int end = -1;
    while (!q.empty() && end < 0) {
      int u = q.front();
      q.pop_front();
      if (snk[uz(u)]) {
        end = u;
        break;
      }
      for (int v : out[uz(u)])
        if (prev[uz(v)] == -2) {
          prev[uz(v)] = u;
          q.push_back(v);
        }
    }
    if (end >= 0) {
      for (int v = end; v >= 0; v = prev[uz(v)]) in[uz(v)] ^= 1;
      continue;
    }
    if (reach_sink) {
      // elements with a path into the sinks
      std::vector<std::vector<int>> rin(uz(m));
      for (int u = 0; u < m; ++u)
        for (int v : out[uz(u)]) rin[uz(v)].push_back(u);
      std::vector<char> seen(uz(m), 0);
      for (int x = 0; x < m; ++x)
        if (snk[uz(x)]) {
          seen[uz(x)] = 1;
          q.push_back(x);
        }
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : rin[uz(v)])
          if (!seen[uz(u)]) {
            seen[uz(u)] = 1;
            q.push_back(u);
          }
      }
      reach_sink->clear();
      for (int k = 0; k < m; ++k)
        if (seen[uz(k)]) reach_sink->push_back(k);
    }
    return J;
  }
}

FRWitness mvsp_matroid_intersection(const MatF& Am, const MatF& Bm, std::vector<int>* minimizer) {
  std::uint32_t p = 0;
  for (Eigen::Index i = 0; i < Am.rows() && !p; ++i)
    for (Eigen::Index j = 0; j < Am.cols() && !p; ++j) p = Am(i, j).p();
  for (Eigen::Index i = 0; i < Bm.rows() && !p; ++i)
    for (Eigen::Index j = 0; j < Bm.cols() && !p; ++j) p = Bm(i, j).p();
  std::vector<int> W;
  matroid_intersection(Am, Bm, &W);
  std::vector<int> rest;
  for (int k = 0; k < static_cast<int>(Am.rows()); ++k)
    if (!std::binary_search(W.begin(), W.end(), k)) rest.push_back(k);
  int n = static_cast<int>(Am.cols()), nb = static_cast<int>(Bm.cols());
  Subspace U = annihilator(span_rows(select_rows(Am, W), n, p));
  Subspace V = annihilator(span_rows(select_rows(Bm, rest), nb, p));
  if (minimizer) *minimizer = W;
  return witness_from_subspaces(U, V, true);
}

SolverKind parse_solver(const std::string& s) {
  if (s == "auto") return SolverKind::Auto;
  if (s == "exhaustive") return SolverKind::Exhaustive;
  if (s == "bipartite") return SolverKind::Bipartite;
  if (s == "matroid") return SolverKind::Matroid;
  throw std::invalid_argument("unknown solver '" + s + "' (auto|exhaustive|bipartite|matroid)");
}

std::string solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::Auto: return "auto";
    case SolverKind::Exhaustive: return "exhaustive";
    case SolverKind::Bipartite: return "bipartite";
    case SolverKind::Matroid: return "matroid";
  }
  return "?";
}

SolverKind classify(const SymbolicMatrix& A) {
  bool single = true, rank1 = true;
  for (const MatF& T : A.terms) {
    int nz = 0;
    for (Eigen::Index i = 0; i < T.rows(); ++i)
      for (Eigen::Index j = 0; j < T.cols(); ++j) nz += !T(i, j).is_zero();
    if (nz > 1) single = false;
    if (nz > 1 && rank(T) > 1) rank1 = false;
  }
  if (single) return SolverKind::Bipartite;
  if (rank1) return SolverKind::Matroid;
  return SolverKind::Exhaustive;
}

namespace {

void rank_one_factors(const SymbolicMatrix& A, MatF& Am, MatF& Bm) {
  Am = MatF::Constant(A.m(), A.rows, Gf(0, A.p));
  Bm = MatF::Constant(A.m(), A.cols, Gf(0, A.p));
  for (int k = 0; k < A.m(); ++k) {
    const MatF& T = A.terms[uz(k)];
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      Eigen::Index j0 = -1;
      for (Eigen::Index j = 0; j < T.cols(); ++j)
        if (!T(i, j).is_zero()) {
          j0 = j;
          break;
        }
      if (j0 < 0) continue;
      // T = a b^T with b^T = row i and a = column j0 / T(i, j0)
      Bm.row(k) = T.row(i);
      Gf iv = inv(T(i, j0));
      for (Eigen::Index r = 0; r < T.rows(); ++r) Am(k, r) = T(r, j0) * iv;
      break;
    }
  }
}

}  // namespace

FRWitness solve_mvsp(const SymbolicMatrix& A, SolverKind kind, bool want_dominant) {
  A.validate();
  SolverKind cls = classify(A);
  if (kind == SolverKind::Auto) kind = cls;
  if (kind == SolverKind::Bipartite && cls != SolverKind::Bipartite)
    throw std::invalid_argument("bipartite solver needs single-entry coefficient matrices");
  if (kind == SolverKind::Matroid && cls == SolverKind::Exhaustive)
    throw std::invalid_argument("matroid solver needs rank-one coefficient matrices");
  switch (kind) {
    case SolverKind::Bipartite: {
      BipartiteGraph G{A.rows, A.cols, {}};
      for (const MatF& T : A.terms)
        for (Eigen::Index i = 0; i < T.rows(); ++i)
          for (Eigen::Index j = 0; j < T.cols(); ++j)
            if (!T(i, j).is_zero()) G.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      return mvsp_bipartite(G, A.p);
    }
    case SolverKind::Matroid: {
      MatF Am, Bm;
      rank_one_factors(A, Am, Bm);
      return mvsp_matroid_intersection(Am, Bm);
    }
    default:
      try {
        return mvsp_exhaustive(A, want_dominant);
      } catch (const EnumerationCapExceeded& e) {
        throw WitnessUnavailable(std::string("no witness for a general instance this large: ") + e.what());
      }
  }
}

std::vector<std::pair<int, int>> runs_of(const std::vector<long long>& values) {
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(values.size());
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && values[uz(j)] == values[uz(i)]) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

namespace {

void check_partition(const std::vector<std::pair<int, int>>& blocks, int n) {
  int at = 0;
  for (auto [b, e] : blocks) {
    if (b != at || e <= b) throw PartitionMismatch("blocks must be consecutive nonempty intervals covering [0, n)");
    at = e;
  }
  if (at != n) throw PartitionMismatch("blocks do not cover all indices");
}

// Rows of S whose first r span a subspace: returns a block-diagonal matrix D
// (rows permuted within blocks) and the positions X of rows spanning the
// subspace, which sit first inside each block.
void position_rows(const MatF& S, int r, const std::vector<std::pair<int, int>>& blocks, std::uint32_t p, MatF& D,
                   std::vector<int>& X) {
  int n = static_cast<int>(S.rows());
  check_partition(blocks, n);
  BruhatTriple b = bruhat(S);
  std::vector<int> block_of(uz(n));
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (int i = blocks[a].first; i < blocks[a].second; ++i) block_of[uz(i)] = static_cast<int>(a);
  MatF Ud = b.U;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (block_of[uz(i)] != block_of[uz(j)]) Ud(i, j) = Gf(0, p);
  std::vector<char> inX(uz(n), 0);
  for (int i = 0; i < r; ++i) inX[uz(b.pi[uz(i)])] = 1;
  std::vector<int> order;
  X.clear();
  for (auto [bb, e] : blocks) {
    for (int i = bb; i < e; ++i)
      if (inX[uz(i)]) {
        X.push_back(static_cast<int>(order.size()));
        order.push_back(i);
      }
    for (int i = bb; i < e; ++i)
      if (!inX[uz(i)]) order.push_back(i);
  }
  D = select_rows(Ud, order);
}

}  // namespace

PositionedWitness block_diagonalize_witness(const FRWitness& w, const std::vector<std::pair<int, int>>& row_blocks,
                                            const std::vector<std::pair<int, int>>& col_blocks) {
  std::uint32_t p = w.U.p;
  PositionedWitness out;
  MatF Dt;
  position_rows(w.S, w.r, row_blocks, p, out.S_pos, out.X);
  position_rows(transpose(w.T), w.s, col_blocks, p, Dt, out.Y);
  out.T_pos = transpose(Dt);
  Subspace U = span_rows(select_rows(out.S_pos, out.X), w.U.ambient, p);
  Subspace V = span_rows(select_rows(Dt, out.Y), w.V.ambient, p);
  out.w = witness_from_subspaces(U, V, w.dominant);
  return out;
}

}  // namespace ncdeg
