#include "ncdeg/degdet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncdeg/linalg.hpp"

namespace ncdeg {

namespace {

using i128 = __int128;

std::size_t uz(long long i) { return static_cast<std::size_t>(i); }

MatF bind_all(const MatF& M, std::uint32_t p) {
  return M.unaryExpr([p](const Gf& x) { return x.bind(p); });
}

MatF eye(int n, std::uint32_t p) { return bind_all(identity<Gf>(n), p); }

RationalMatrix rat_eye(int n, std::uint32_t p) { return to_rational(eye(n, p)); }

Rational to_rational_num(long long x) { return Rational(x); }

template <typename W>
std::vector<std::pair<int, int>> runs(const std::vector<W>& v) {
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(v.size());
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && v[uz(j)] == v[uz(i)]) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

template <typename W>
W tail_objective(const std::vector<W>& a, const std::vector<W>& b, int ell) {
  W s = 0;
  int n = static_cast<int>(a.size());
  for (int i = n - ell; i < n; ++i) s -= a[uz(i)] + b[uz(i)];
  return s;
}

template <typename W>
bool non_increasing(const std::vector<W>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

std::vector<int> nonzero_terms(const std::vector<MatF>& terms) {
  std::vector<int> K;
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (!is_zero_matrix(terms[k])) K.push_back(static_cast<int>(k));
  return K;
}

// ---------------------------------------------------------------- monomial

template <typename W>
struct MonoDual {
  std::vector<W> a, b;
  MatF P, Q;
};

template <typename W>
struct MonoRun {
  std::vector<std::optional<W>> vals;
  std::vector<std::optional<MonoDual<W>>> duals;
  long iters = 0;
  bool dominant = true;
  int k2viol = 0;
  std::vector<int> ranks;
  std::vector<MonoDual<W>> trace;
};

template <typename W>
MonoRun<W> mono_core(const SymbolicMatrix& A, const std::vector<W>& c, const AlgoOptions& opt) {
  int n = A.rows;
  std::uint32_t p = A.p;
  MonoRun<W> R;
  R.vals.assign(uz(n + 1), std::nullopt);
  R.duals.assign(uz(n + 1), std::nullopt);
  std::vector<int> K = nonzero_terms(A.terms);
  MonoDual<W> st{std::vector<W>(uz(n), 0), std::vector<W>(uz(n), 0), eye(n, p), eye(n, p)};
  R.vals[0] = 0;
  if (K.empty()) {
    R.duals[0] = st;
    return R;
  }
  W d = c[uz(K[0])], cmin = c[uz(K[0])];
  for (int k : K) {
    d = std::max(d, c[uz(k)]);
    cmin = std::min(cmin, c[uz(k)]);
  }
  std::fill(st.b.begin(), st.b.end(), -d);
  R.duals[0] = st;

  int rho_prev = 0, rho_at_step = -1;
  bool last_was_k2 = true;
  while (true) {
    std::vector<MatF> L;
    L.reserve(A.terms.size());
    for (std::size_t k = 0; k < A.terms.size(); ++k) L.push_back(MatF::Constant(n, n, Gf(0, p)));
    for (int k : K) {
      MatF M = mul(mul(st.P, A.terms[uz(k)]), st.Q);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (M(i, j).is_zero()) continue;
          W s = st.a[uz(i)] + st.b[uz(j)] + c[uz(k)];
          if (s > 0) throw std::logic_error("hungarian: dual became infeasible");
          if (s == 0) L[uz(k)](i, j) = M(i, j);
        }
    }
    SymbolicMatrix Ls{n, n, p, L};
    FRWitness w = solve_mvsp(Ls, opt.solver, opt.dominant);
    R.dominant = R.dominant && w.dominant;
    int rho = 2 * n - w.r - w.s;
    if (rho < rho_prev) throw std::logic_error("hungarian: leading nc-rank decreased");
    if (rho_at_step >= 0 && rho == rho_at_step && !last_was_k2) ++R.k2viol;
    R.ranks.push_back(rho);
    if (opt.record_trace) R.trace.push_back(st);
    for (int l = rho_prev + 1; l <= rho; ++l) {
      R.vals[uz(l)] = tail_objective(st.a, st.b, l);
      R.duals[uz(l)] = st;
    }
    rho_prev = rho;
    if (rho == n) break;
    // a finite Delta_{rho+1} is at least (rho+1) min c
    if (tail_objective(st.a, st.b, rho + 1) < static_cast<W>(rho + 1) * cmin) break;

    PositionedWitness pw = block_diagonalize_witness(w, runs(st.a), runs(st.b));
    if (pw.w.r != w.r || pw.w.s != w.s || !verify_witness(Ls, pw.w))
      throw std::logic_error("hungarian: block-diagonal normalization lost the witness");
    MatF P2 = mul(pw.S_pos, st.P), Q2 = mul(st.Q, pw.T_pos);
    std::vector<char> inX(uz(n), 0), inY(uz(n), 0);
    for (int x : pw.X) inX[uz(x)] = 1;
    for (int y : pw.Y) inY[uz(y)] = 1;
    std::optional<W> k1, k2;
    for (int k : K) {
      MatF M = mul(mul(P2, A.terms[uz(k)]), Q2);
      for (int i : pw.X)
        for (int j : pw.Y)
          if (!M(i, j).is_zero()) {
            W s = -(st.a[uz(i)] + st.b[uz(j)] + c[uz(k)]);
            if (!k1 || s < *k1) k1 = s;
          }
    }
    for (int i = 0; i + 1 < n; ++i) {
      if (!inX[uz(i)] && inX[uz(i + 1)]) {
        W g = st.a[uz(i)] - st.a[uz(i + 1)];
        if (!k2 || g < *k2) k2 = g;
      }
      if (!inY[uz(i)] && inY[uz(i + 1)]) {
        W g = st.b[uz(i)] - st.b[uz(i + 1)];
        if (!k2 || g < *k2) k2 = g;
      }
    }
    if (!k1) break;  // the X x Y block vanishes for every t-power: -inf beyond rho
    if (*k1 <= 0 || (k2 && *k2 <= 0)) throw std::logic_error("hungarian: non-positive step");
    W kappa = k2 ? std::min(*k1, *k2) : *k1;
    last_was_k2 = k2 && *k2 <= *k1;
    rho_at_step = rho;
    for (int i = 0; i < n; ++i) {
      if (inX[uz(i)]) st.a[uz(i)] += kappa;
      if (!inY[uz(i)]) st.b[uz(i)] -= kappa;
    }
    st.P = P2;
    st.Q = Q2;
    if (++R.iters > opt.max_iterations) throw std::runtime_error("hungarian: iteration limit reached");
  }
  return R;
}

template <typename W>
DualSolution to_dual(const MonoDual<W>& m) {
  DualSolution d;
  d.mode = DualMode::Monomial;
  for (const W& x : m.a) d.alpha.push_back(to_rational_num(x));
  for (const W& x : m.b) d.beta.push_back(to_rational_num(x));
  d.P = m.P;
  d.Q = m.Q;
  return d;
}

WeightedSymbolicMatrix square_up(const WeightedSymbolicMatrix& Ac) {
  Ac.validate();
  if (Ac.base.rows == Ac.base.cols) return Ac;
  return pad_square(Ac);
}

// ---------------------------------------------------------------- general

struct GenState {
  std::vector<long long> a, b;
  RationalMatrix P, Q;
};

DualSolution to_dual(const GenState& s) {
  DualSolution d;
  d.mode = DualMode::General;
  for (long long x : s.a) d.alpha.emplace_back(x);
  for (long long x : s.b) d.beta.emplace_back(x);
  d.Pr = s.P;
  d.Qr = s.Q;
  return d;
}

RationalMatrix shifted(const RationalMatrix& M, const std::vector<long long>& a, const std::vector<long long>& b,
                       std::uint32_t p) {
  RationalMatrix W = M;
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j)
      if (!W(i, j).is_zero()) W(i, j) = W(i, j) * RatFn::monomial(Gf(1, p), a[uz(i)] + b[uz(j)]);
  return W;
}

std::vector<long long> to_ll(const std::vector<Rational>& v) {
  std::vector<long long> out;
  for (const Rational& x : v) {
    if (denominator(x) != 1) throw std::invalid_argument("general dual needs integer shifts");
    out.push_back(static_cast<long long>(numerator(x)));
  }
  return out;
}

std::uint32_t prime_of(const RationalSymbolicMatrix& B) { return B.p; }

std::uint32_t prime_of(const MatF& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(i, j).p()) return M(i, j).p();
  return 0;
}

// one renormalization step on the general state
void renormalize_state(GenState& st, const FRWitness& w, long long kappa, std::uint32_t p) {
  int n = static_cast<int>(st.a.size());
  // left: S ~ pi U, rows X' = pi[0..r) get raised
  {
    BruhatTriple br = bruhat(w.S);
    std::vector<long long> a2 = st.a;
    for (int i = 0; i < w.r; ++i) a2[uz(br.pi[uz(i)])] += kappa;
    RationalMatrix Ut(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        Ut(i, j) = br.U(i, j).is_zero() ? RatFn(Poly::constant(Gf(0, p)))
                                        : RatFn::monomial(br.U(i, j), st.a[uz(j)] - st.a[uz(i)]);
    RationalMatrix UP = mul(Ut, st.P);
    std::vector<int> order(uz(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a2[uz(x)] > a2[uz(y)]; });
    for (int q = 0; q < n; ++q) {
      st.a[uz(q)] = a2[uz(order[uz(q)])];
      st.P.row(q) = UP.row(order[uz(q)]);
    }
  }
  // right: T ~ M pi^T with M lower triangular, columns Y' = pi[0..s)
  {
    BruhatTriple br = bruhat(transpose(w.T));
    std::vector<long long> b2 = st.b;
    std::vector<char> inY(uz(n), 0);
    for (int j = 0; j < w.s; ++j) inY[uz(br.pi[uz(j)])] = 1;
    for (int j = 0; j < n; ++j)
      if (!inY[uz(j)]) b2[uz(j)] -= kappa;
    RationalMatrix Mt(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Gf& v = br.U(j, i);  // M = U^T
        Mt(i, j) = v.is_zero() ? RatFn(Poly::constant(Gf(0, p))) : RatFn::monomial(v, st.b[uz(i)] - st.b[uz(j)]);
      }
    RationalMatrix QM = mul(st.Q, Mt);
    std::vector<int> order(uz(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return b2[uz(x)] > b2[uz(y)]; });
    RationalMatrix Qn = QM;
    for (int q = 0; q < n; ++q) {
      st.b[uz(q)] = b2[uz(order[uz(q)])];
      Qn.col(q) = QM.col(order[uz(q)]);
    }
    st.Q = Qn;
  }
}

// Deg-SubDet; long_step = false gives plain Deg-Det
DegreeProfile general_loop(const RationalSymbolicMatrix& B, const AlgoOptions& opt, bool long_step) {
  B.validate();
  int n = B.n;
  std::uint32_t p = prime_of(B);
  DegreeProfile prof;
  prof.n = n;
  prof.values.assign(uz(n + 1), Degree::neg_inf());
  prof.duals.assign(uz(n + 1), std::nullopt);
  prof.values[0] = Degree(0);
  std::vector<int> K;
  for (int k = 0; k < B.m(); ++k)
    if (!max_deg(B.terms[uz(k)]).is_neg_inf()) K.push_back(k);
  GenState st{std::vector<long long>(uz(n), 0), std::vector<long long>(uz(n), 0), rat_eye(n, p), rat_eye(n, p)};
  if (K.empty()) {
    prof.duals[0] = to_dual(st);
    return prof;
  }
  long long d = B.d().value(), d0 = B.d0().value();
  std::fill(st.b.begin(), st.b.end(), -d);
  prof.duals[0] = to_dual(st);
  int rho_prev = 0, rho_at_step = -1;
  bool last_was_k2 = true;
  while (true) {
    std::vector<RationalMatrix> Wk;
    std::vector<MatF> L;
    for (int k = 0; k < B.m(); ++k) L.push_back(MatF::Constant(n, n, Gf(0, p)));
    for (int k : K) {
      RationalMatrix W = shifted(mul(mul(st.P, B.terms[uz(k)]), st.Q), st.a, st.b, p);
      Degree md = max_deg(W);
      if (!md.is_neg_inf() && md > Degree(0)) throw std::logic_error("deg_subdet: dual became infeasible");
      L[uz(k)] = bind_all(constant_term_matrix(W), p);
      Wk.push_back(W);
    }
    SymbolicMatrix Ls{n, n, p, L};
    FRWitness w = solve_mvsp(Ls, opt.solver, opt.dominant);
    prof.dominant = prof.dominant && w.dominant;
    int rho = 2 * n - w.r - w.s;
    if (rho < rho_prev) throw std::logic_error("deg_subdet: leading nc-rank decreased");
    if (rho_at_step >= 0 && rho == rho_at_step && !last_was_k2) ++prof.kappa2_violations;
    prof.rank_trace.push_back(rho);
    if (opt.record_trace) prof.trace.push_back(to_dual(st));
    if (long_step) {
      for (int l = rho_prev + 1; l <= rho; ++l) {
        prof.values[uz(l)] = Degree(tail_objective(st.a, st.b, l));
        prof.duals[uz(l)] = to_dual(st);
      }
    } else if (rho == n) {
      prof.values[uz(n)] = Degree(tail_objective(st.a, st.b, n));
      prof.duals[uz(n)] = to_dual(st);
    }
    rho_prev = rho;
    if (rho == n) break;
    int target = long_step ? rho + 1 : n;
    if (tail_objective(st.a, st.b, target) < static_cast<long long>(target) * d0) break;
    long long kappa = 1;
    if (long_step) {
      Degree top = Degree::neg_inf();
      for (const RationalMatrix& W : Wk) {
        RationalMatrix Z = mul(mul(to_rational(w.S), W), to_rational(w.T));
        for (int i = 0; i < w.r; ++i)
          for (int j = 0; j < w.s; ++j) top = max(top, deg(Z(i, j)));
      }
      if (top.is_neg_inf()) break;  // zero block survives every step
      if (top >= Degree(0)) throw std::logic_error("deg_subdet: zero block has a constant term");
      kappa = -top.value();
    }
    last_was_k2 = kappa == 1;
    rho_at_step = rho;
    renormalize_state(st, w, kappa, p);
    if (++prof.iterations > opt.max_iterations) throw std::runtime_error("deg_subdet: iteration limit reached");
  }
  // general mode has no kappa2 notion; the counter is kept for the monomial paths
  prof.kappa2_violations = 0;
  return prof;
}

}  // namespace

std::string mode_name(DualMode m) {
  switch (m) {
    case DualMode::General: return "general";
    case DualMode::Monomial: return "monomial";
    case DualMode::Symmetric: return "symmetric";
  }
  return "?";
}

Rational DualSolution::objective(int ell) const { return tail_objective(alpha, beta, ell); }

Degree DegreeProfile::max() const {
  Degree m = Degree::neg_inf();
  for (const Degree& v : values) m = ncdeg::max(m, v);
  return m;
}

std::optional<Rational> StepSizes::kappa() const {
  if (kappa1 && kappa2) return std::min(*kappa1, *kappa2);
  if (kappa1) return kappa1;
  return kappa2;
}

DegDetResult deg_det(const RationalSymbolicMatrix& B, const AlgoOptions& opt) {
  DegreeProfile prof = general_loop(B, opt, false);
  DegDetResult r;
  r.value = prof.values[uz(B.n)];
  r.iterations = prof.iterations;
  r.dual = prof.duals[uz(B.n)];
  return r;
}

DegreeProfile deg_subdet(const RationalSymbolicMatrix& B, const AlgoOptions& opt) {
  return general_loop(B, opt, true);
}

DualSolution renormalize(const DualSolution& sol, const FRWitness& w, long long kappa) {
  if (sol.mode != DualMode::General) throw std::invalid_argument("renormalize works on general-mode duals");
  GenState st{to_ll(sol.alpha), to_ll(sol.beta), sol.Pr, sol.Qr};
  if (!non_increasing(st.a) || !non_increasing(st.b)) throw NotSorted("alpha and beta must be non-increasing");
  std::uint32_t p = prime_of(w.S);
  if (!p) p = prime_of(w.T);
  if (!p) throw std::invalid_argument("renormalize: witness carries no modulus");
  renormalize_state(st, w, kappa, p);
  return to_dual(st);
}

DegreeProfile hungarian_deg_det(const WeightedSymbolicMatrix& Ac0, const AlgoOptions& opt) {
  WeightedSymbolicMatrix Ac = square_up(Ac0);
  MonoRun<long long> R = mono_core<long long>(Ac.base, Ac.c, opt);
  DegreeProfile prof;
  int n = Ac.base.rows;
  int keep = std::min(Ac0.base.rows, Ac0.base.cols);
  prof.n = n;
  for (int l = 0; l <= keep; ++l) {
    prof.values.push_back(R.vals[uz(l)] ? Degree(*R.vals[uz(l)]) : Degree::neg_inf());
    if (R.duals[uz(l)]) prof.duals.push_back(to_dual(*R.duals[uz(l)]));
    else prof.duals.push_back(std::nullopt);
  }
  prof.iterations = R.iters;
  prof.dominant = R.dominant;
  prof.kappa2_violations = R.k2viol;
  prof.rank_trace = R.ranks;
  for (const auto& t : R.trace) prof.trace.push_back(to_dual(t));
  return prof;
}

StepSizes step_sizes(const DualSolution& sol, const std::vector<int>& X, const std::vector<int>& Y,
                     const WeightedSymbolicMatrix& Ac) {
  StepSizes out;
  int n = sol.n();
  std::vector<char> inX(uz(n), 0), inY(uz(n), 0);
  for (int x : X) inX[uz(x)] = 1;
  for (int y : Y) inY[uz(y)] = 1;
  for (std::size_t k = 0; k < Ac.base.terms.size(); ++k) {
    MatF M = mul(mul(sol.P, Ac.base.terms[k]), sol.Q);
    for (int i : X)
      for (int j : Y)
        if (!M(i, j).is_zero()) {
          Rational s = -(sol.alpha[uz(i)] + sol.beta[uz(j)] + Rational(Ac.c[k]));
          if (!out.kappa1 || s < *out.kappa1) out.kappa1 = s;
        }
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!inX[uz(i)] && inX[uz(i + 1)]) {
      Rational g = sol.alpha[uz(i)] - sol.alpha[uz(i + 1)];
      if (!out.kappa2 || g < *out.kappa2) out.kappa2 = g;
    }
    if (!inY[uz(i)] && inY[uz(i + 1)]) {
      Rational g = sol.beta[uz(i)] - sol.beta[uz(i + 1)];
      if (!out.kappa2 || g < *out.kappa2) out.kappa2 = g;
    }
  }
  return out;
}

// ---------------------------------------------------------------- symmetric

namespace {


// Extend the rows of B by rows of C that raise the rank.
MatF extend_by(const MatF& B, const MatF& C) {
  MatF cur = B;
  int r = cur.rows() ? rank(cur) : 0;
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    MatF t(cur.rows() + 1, C.cols());
    if (cur.rows()) t.topRows(cur.rows()) = cur;
    t.row(cur.rows()) = C.row(i);
    if (rank(t) > r) {
      cur = t;
      ++r;
    }
  }
  return cur;
}

}  // namespace

DegreeProfile symmetric_hungarian(const WeightedSymbolicMatrix& Ac, const AlgoOptions& opt) {
  Ac.validate();
  const SymbolicMatrix& A = Ac.base;
  if (!is_skew_symmetric(A)) throw NotSkewSymmetric("symmetric_hungarian needs skew-symmetric coefficient matrices");
  int n = A.rows;
  std::uint32_t p = A.p;
  DegreeProfile prof;
  prof.n = n;
  prof.values.assign(uz(n + 1), Degree::neg_inf());
  prof.duals.assign(uz(n + 1), std::nullopt);
  prof.values[0] = Degree(0);
  std::vector<int> K = nonzero_terms(A.terms);
  DualSolution st;
  st.mode = DualMode::Symmetric;
  st.alpha.assign(uz(n), Rational(0));
  st.P = eye(n, p);
  auto snapshot = [&] {
    DualSolution d = st;
    d.beta = st.alpha;
    d.Q = transpose(st.P);
    return d;
  };
  if (K.empty()) {
    prof.duals[0] = snapshot();
    return prof;
  }
  long long d = Ac.c[uz(K[0])], cmin = d;
  for (int k : K) {
    d = std::max(d, Ac.c[uz(k)]);
    cmin = std::min(cmin, Ac.c[uz(k)]);
  }
  std::fill(st.alpha.begin(), st.alpha.end(), Rational(-d, 2));
  prof.duals[0] = snapshot();
  auto obj = [&](int l) {
    Rational s = 0;
    for (int i = n - l; i < n; ++i) s -= 2 * st.alpha[uz(i)];
    return s;
  };
  int rho_prev = 0, rho_at_step = -1;
  bool last_was_k2 = true;
  while (true) {
    std::vector<MatF> L;
    for (int k = 0; k < A.m(); ++k) L.push_back(MatF::Constant(n, n, Gf(0, p)));
    for (int k : K) {
      MatF M = mul(mul(st.P, A.terms[uz(k)]), transpose(st.P));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (M(i, j).is_zero()) continue;
          Rational s = st.alpha[uz(i)] + st.alpha[uz(j)] + Ac.c[uz(k)];
          if (s > 0) throw std::logic_error("symmetric_hungarian: dual became infeasible");
          if (s == 0) L[uz(k)](i, j) = M(i, j);
        }
    }
    SymbolicMatrix Ls{n, n, p, L};
    FRWitness w = solve_mvsp(Ls, opt.solver, opt.dominant);
    prof.dominant = prof.dominant && w.dominant;
    if (!w.U.contains(w.V)) throw std::logic_error("symmetric_hungarian: witness lacks U >= V (needs a dominant solver)");
    int rho = 2 * n - w.r - w.s;
    if (rho < rho_prev) throw std::logic_error("symmetric_hungarian: leading nc-rank decreased");
    if (rho_at_step >= 0 && rho == rho_at_step && !last_was_k2) ++prof.kappa2_violations;
    prof.rank_trace.push_back(rho);
    if (opt.record_trace) prof.trace.push_back(snapshot());
    for (int l = rho_prev + 1; l <= rho; ++l) {
      Rational v = obj(l);
      if (denominator(v) != 1) throw std::logic_error("symmetric_hungarian: half-integral objective");
      prof.values[uz(l)] = Degree(static_cast<long long>(numerator(v)));
      prof.duals[uz(l)] = snapshot();
    }
    rho_prev = rho;
    if (rho == n) break;
    if (obj(rho + 1) < Rational(static_cast<long long>(rho + 1) * cmin)) break;

    // per alpha-block: basis of V, then U, then the rest
    std::vector<int> cat(uz(n), 0);  // 2 = Y, 1 = X \ Y, 0 = rest
    MatF S = MatF::Constant(n, n, Gf(0, p));
    int du = 0, dv = 0;
    for (auto [b, e] : runs(st.alpha)) {
      int len = e - b;
      MatF Ua = w.U.dim() ? MatF(w.U.basis.middleCols(b, len)) : MatF(0, len);
      MatF Va = w.V.dim() ? MatF(w.V.basis.middleCols(b, len)) : MatF(0, len);
      MatF Vb = Va.rows() ? span_rows(Va, len, p).basis : MatF(0, len);
      MatF VU = extend_by(Vb, Ua);
      MatF full = extend_by(VU, eye(len, p));
      int nv = static_cast<int>(Vb.rows()), nu = static_cast<int>(VU.rows());
      du += nu;
      dv += nv;
      for (int q = 0; q < len; ++q) {
        S.block(b + q, b, 1, len) = full.row(q);
        cat[uz(b + q)] = q < nv ? 2 : (q < nu ? 1 : 0);
      }
    }
    if (du != w.U.dim() || dv != w.V.dim())
      throw std::logic_error("symmetric_hungarian: dominant witness does not split along the alpha blocks");
    MatF P2 = mul(S, st.P);
    std::optional<Rational> k1, k2;
    for (int k : K) {
      MatF M = mul(mul(P2, A.terms[uz(k)]), transpose(P2));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (M(i, j).is_zero()) continue;
          int ci = cat[uz(i)], cj = cat[uz(j)];
          if (ci < 1 || cj < 1 || (ci == 1 && cj == 1)) continue;
          Rational s = -(st.alpha[uz(i)] + st.alpha[uz(j)] + Ac.c[uz(k)]);
          if (s <= 0) throw std::logic_error("symmetric_hungarian: witness block not vanishing");
          Rational bound = (ci == 2 && cj == 2) ? s : 2 * s;
          if (!k1 || bound < *k1) k1 = bound;
        }
    }
    auto delta = [&](int i) { return Rational(cat[uz(i)] - 1, 2); };
    for (int i = 0; i + 1 < n; ++i) {
      Rational gap = delta(i + 1) - delta(i);
      if (gap > 0) {
        Rational g = (st.alpha[uz(i)] - st.alpha[uz(i + 1)]) / gap;
        if (!k2 || g < *k2) k2 = g;
      }
    }
    if (!k1) break;
    Rational kappa = k2 ? std::min(*k1, *k2) : *k1;
    if (kappa <= 0) throw std::logic_error("symmetric_hungarian: non-positive step");
    last_was_k2 = k2 && *k2 <= *k1;
    rho_at_step = rho;
    for (int i = 0; i < n; ++i) st.alpha[uz(i)] += kappa * delta(i);
    st.P = P2;
    if (++prof.iterations > opt.max_iterations) throw std::runtime_error("symmetric_hungarian: iteration limit reached");
  }
  return prof;
}

// ---------------------------------------------------------------- dual forms

DualSolution flatten_head(const DualSolution& sol, int ell) {
  int n = sol.n();
  if (ell < 0 || ell > n) throw std::invalid_argument("flatten_head: ell out of range");
  DualSolution out = sol;
  if (n == 0) return out;
  std::size_t pivot = uz(ell == 0 ? n - 1 : n - ell);
  for (std::size_t i = 0; i < pivot; ++i) {
    out.alpha[i] = sol.alpha[pivot];
    out.beta[i] = sol.beta[pivot];
  }
  return out;
}

MvmpForm dual_forms_convert(const DualSolution& sol, int ell) {
  if (sol.mode == DualMode::General) throw std::invalid_argument("dual_forms_convert needs field-valued P, Q");
  int n = sol.n();
  if (ell < 0 || ell > n) throw std::invalid_argument("dual_forms_convert: ell out of range");
  for (int i = 1; i < n - ell; ++i)
    if (sol.alpha[uz(i)] != sol.alpha[0] || sol.beta[uz(i)] != sol.beta[0])
      throw NotComplementarySlack("alpha_1 = ... = alpha_{n-l} fails at index " + std::to_string(i + 1));
  MvmpForm f;
  Rational g1 = n ? sol.alpha[0] : Rational(0), g2 = n ? sol.beta[0] : Rational(0);
  f.gamma = g1 + g2;
  for (int i = 0; i < n; ++i) {
    f.xi.push_back(g1 - sol.alpha[uz(i)]);
    f.eta.push_back(g2 - sol.beta[uz(i)]);
  }
  std::uint32_t p = prime_of(sol.P);
  MatF Qt = transpose(sol.Q);
  for (int i = 0; i <= n; ++i) {
    f.U_flag.push_back(span_rows(sol.P.topRows(i), n, p));
    f.V_flag.push_back(span_rows(Qt.topRows(i), n, p));
  }
  f.objective = -Rational(ell) * f.gamma;
  for (int i = 0; i < n; ++i) f.objective += f.xi[uz(i)] + f.eta[uz(i)];
  return f;
}

bool mvmp_feasible(const MvmpForm& f, const DualSolution& sol, const WeightedSymbolicMatrix& Ac) {
  int n = sol.n();
  for (const Rational& x : f.xi)
    if (x < 0) return false;
  for (const Rational& x : f.eta)
    if (x < 0) return false;
  for (std::size_t k = 0; k < Ac.base.terms.size(); ++k) {
    MatF M = mul(mul(sol.P, Ac.base.terms[k]), sol.Q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!M(i, j).is_zero() && f.xi[uz(i)] + f.eta[uz(j)] < f.gamma + Ac.c[k]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- optimize_Q

namespace {

std::vector<std::optional<std::vector<long long>>> optimize_all(const WeightedSymbolicMatrix& Ac0,
                                                                const AlgoOptions& opt) {
  WeightedSymbolicMatrix Ac = square_up(Ac0);
  int n = Ac.base.rows, m = Ac.base.m();
  MonoRun<long long> base = mono_core<long long>(Ac.base, Ac.c, opt);
  // w0 = (n+1) (M^m c + sum_k M^{m-1-k} e_k), M = n+1: a unique maximizer
  // that also maximizes c and survives +e_k
  long double M = n + 1, cmax = 1;
  for (long long x : Ac.c) cmax = std::max<long double>(cmax, std::fabs(static_cast<long double>(x)) + 1);
  long double est = (n + 1) * std::pow(M, m) * cmax * 4 * (n + 1);
  if (!(est < std::ldexp(1.0L, 120))) throw CapExceeded("optimize_Q: perturbed weights exceed 128-bit range");
  std::vector<i128> w0(uz(m));
  i128 Mi = n + 1, pw = 1;
  std::vector<i128> powers(uz(m + 1));
  for (int e = 0; e <= m; ++e) {
    powers[uz(e)] = pw;
    pw *= Mi;
  }
  for (int k = 0; k < m; ++k)
    w0[uz(k)] = Mi * (powers[uz(m)] * static_cast<i128>(Ac.c[uz(k)]) + powers[uz(m - 1 - k)]);
  MonoRun<i128> r0 = mono_core<i128>(Ac.base, w0, opt);
  std::vector<std::optional<std::vector<long long>>> out(uz(n + 1));
  std::vector<std::vector<long long>> u(uz(n + 1), std::vector<long long>(uz(m), 0));
  for (int k = 0; k < m; ++k) {
    if (is_zero_matrix(Ac.base.terms[uz(k)])) continue;
    std::vector<i128> wk = w0;
    wk[uz(k)] += 1;
    MonoRun<i128> rk = mono_core<i128>(Ac.base, wk, opt);
    for (int l = 0; l <= n; ++l)
      if (r0.vals[uz(l)] && rk.vals[uz(l)]) u[uz(l)][uz(k)] = static_cast<long long>(*rk.vals[uz(l)] - *r0.vals[uz(l)]);
  }
  for (int l = 0; l <= n; ++l) {
    if (!base.vals[uz(l)]) continue;
    if (!r0.vals[uz(l)]) throw std::logic_error("optimize_Q: perturbed profile lost a finite value");
    long long ones = 0, cu = 0;
    for (int k = 0; k < m; ++k) {
      ones += u[uz(l)][uz(k)];
      cu += Ac.c[uz(k)] * u[uz(l)][uz(k)];
    }
    if (ones != l || cu != *base.vals[uz(l)]) throw std::logic_error("optimize_Q: recovered u is not optimal");
    out[uz(l)] = u[uz(l)];
  }
  return out;
}

}  // namespace

std::vector<long long> optimize_Q(const WeightedSymbolicMatrix& Ac, int ell, const AlgoOptions& opt) {
  int lim = std::min(Ac.base.rows, Ac.base.cols);
  if (ell < 0 || ell > lim) throw BadCardinality("ell out of range");
  if (ell == 0) return std::vector<long long>(uz(Ac.base.m()), 0);
  auto all = optimize_all(Ac, opt);
  if (!all[uz(ell)]) throw Infeasible("Delta_" + std::to_string(ell) + " is -inf; Q_l is empty");
  return *all[uz(ell)];
}

// ---------------------------------------------------------------- checks

std::string check_dual(const WeightedSymbolicMatrix& Ac, const DualSolution& sol) {
  const SymbolicMatrix& A = Ac.base;
  int n = sol.n();
  if (sol.mode == DualMode::General) return "general-mode dual given for a weighted matrix";
  if (A.rows != n || A.cols != n) return "dual size does not match the matrix";
  if (static_cast<int>(sol.beta.size()) != n) return "beta has the wrong length";
  if (!non_increasing(sol.alpha)) return "alpha is not non-increasing";
  if (!non_increasing(sol.beta)) return "beta is not non-increasing";
  if (sol.P.rows() != n || sol.P.cols() != n || sol.Q.rows() != n || sol.Q.cols() != n) return "P or Q has the wrong shape";
  if (rank(sol.P) != n) return "P is singular";
  if (rank(sol.Q) != n) return "Q is singular";
  if (sol.mode == DualMode::Monomial) {
    for (int i = 0; i < n; ++i)
      if (denominator(sol.alpha[uz(i)]) != 1 || denominator(sol.beta[uz(i)]) != 1) return "monomial dual must be integral";
  } else {
    if (sol.alpha != sol.beta) return "symmetric dual needs beta = alpha";
    if (sol.Q != transpose(sol.P)) return "symmetric dual needs Q = P^T";
    for (int i = 0; i < n; ++i)
      if (denominator(Rational(2 * sol.alpha[uz(i)])) != 1) return "symmetric dual must be half-integral";
  }
  for (std::size_t k = 0; k < A.terms.size(); ++k) {
    MatF M = mul(mul(sol.P, A.terms[k]), sol.Q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!M(i, j).is_zero() && sol.alpha[uz(i)] + sol.beta[uz(j)] + Ac.c[k] > 0)
          return "constraint violated at term " + std::to_string(k + 1) + ", entry (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")";
  }
  return "";
}

std::string check_dual(const RationalSymbolicMatrix& B, const DualSolution& sol) {
  int n = sol.n();
  if (sol.mode != DualMode::General) return "field-valued dual given for a rational matrix";
  if (B.n != n || static_cast<int>(sol.beta.size()) != n) return "dual size does not match the matrix";
  if (!non_increasing(sol.alpha)) return "alpha is not non-increasing";
  if (!non_increasing(sol.beta)) return "beta is not non-increasing";
  std::vector<long long> a, b;
  try {
    a = to_ll(sol.alpha);
    b = to_ll(sol.beta);
  } catch (const std::exception&) {
    return "general dual must be integral";
  }
  if (!biproper_flag(sol.Pr).biproper()) return "P is not biproper";
  if (!biproper_flag(sol.Qr).biproper()) return "Q is not biproper";
  for (int k = 0; k < B.m(); ++k) {
    RationalMatrix W = shifted(mul(mul(sol.Pr, B.terms[uz(k)]), sol.Qr), a, b, B.p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!W(i, j).is_zero() && deg(W(i, j)) > Degree(0))
          return "constraint violated at term " + std::to_string(k + 1) + ", entry (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")";
  }
  return "";
}

bool is_concave(const std::vector<Degree>& v) {
  std::size_t fin = 0;
  while (fin < v.size() && v[fin].finite()) ++fin;
  for (std::size_t i = fin; i < v.size(); ++i)
    if (!v[i].is_neg_inf()) return false;
  for (std::size_t i = 1; i + 1 < fin; ++i)
    if (v[i - 1].value() + v[i + 1].value() > 2 * v[i].value()) return false;
  return true;
}

namespace {

template <typename Mat>
std::string check_profile_impl(const Mat& A, const DegreeProfile& prof) {
  if (prof.values.empty() || prof.values[0] != Degree(0)) return "Delta_0 must be 0";
  if (!is_concave(prof.values)) return "profile is not concave";
  for (std::size_t l = 0; l < prof.values.size(); ++l) {
    if (!prof.values[l].finite()) continue;
    if (l >= prof.duals.size() || !prof.duals[l]) return "missing dual for l=" + std::to_string(l);
    std::string e = check_dual(A, *prof.duals[l]);
    if (!e.empty()) return "dual for l=" + std::to_string(l) + ": " + e;
    if (prof.duals[l]->objective(static_cast<int>(l)) != Rational(prof.values[l].value()))
      return "dual objective differs from Delta_" + std::to_string(l);
  }
  return "";
}

}  // namespace

std::string check_profile(const WeightedSymbolicMatrix& Ac, const DegreeProfile& prof) {
  WeightedSymbolicMatrix sq = square_up(Ac);
  return check_profile_impl(sq, prof);
}

std::string check_profile(const RationalSymbolicMatrix& B, const DegreeProfile& prof) {
  return check_profile_impl(B, prof);
}

}  // namespace ncdeg
