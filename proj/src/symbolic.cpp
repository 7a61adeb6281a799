#include "ncdeg/symbolic.hpp"

#include <algorithm>
#include <map>

#include "ncdeg/assignment.hpp"
#include "ncdeg/extfield.hpp"
#include "ncdeg/interp.hpp"
#include "ncdeg/linalg.hpp"
#include "ncdeg/util.hpp"

namespace ncdeg {

namespace {

std::size_t uz(long long i) { return static_cast<std::size_t>(i); }

// Sampling contexts. Small primes go through GF(p^k).
struct BaseCtx {
  using F = Gf;
  std::uint32_t p;
  Gf embed(const Gf& x) const { return x.bind(p); }
  Gf rand(Rng& rng) const { return random_elem(rng, p); }
  std::vector<Gf> points(std::size_t n) const {
    if (n > p - 1) throw CapExceeded("not enough evaluation points in the field");
    return nonzero_points(p, n);
  }
};

struct ExtCtx {
  using F = Gfq;
  const GfqTables* t;
  Gfq embed(const Gf& x) const { return Gfq(x, *t); }
  Gfq rand(Rng& rng) const { return random_elem(rng, *t); }
  std::vector<Gfq> points(std::size_t n) const {
    if (n > t->q - 1) throw CapExceeded("not enough evaluation points in the field");
    return nonzero_points(*t, n);
  }
};

template <typename Fn>
auto with_sampling_field(std::uint32_t p, Fn&& fn) {
  if (p < 65536) return fn(ExtCtx{&gfq_tables(p)});
  return fn(BaseCtx{p});
}

// sum_k A_k (x) X_k restricted to rows I, cols J, grouped by weight.
template <typename Ctx>
std::map<long long, Mat<typename Ctx::F>> kron_by_weight(const SymbolicMatrix& A, const std::vector<long long>& c,
                                                         const std::vector<int>& I, const std::vector<int>& J, int d,
                                                         const Ctx& ctx, Rng& rng,
                                                         const std::vector<long long>* pu = nullptr,
                                                         const std::vector<long long>* pv = nullptr,
                                                         Mat<typename Ctx::F>* lead = nullptr) {
  using F = typename Ctx::F;
  std::map<long long, Mat<F>> out;
  Eigen::Index R = static_cast<Eigen::Index>(I.size()) * d, C = static_cast<Eigen::Index>(J.size()) * d;
  if (lead) *lead = zeros<F>(R, C);
  for (std::size_t k = 0; k < A.terms.size(); ++k) {
    const MatF& Ak = A.terms[k];
    bool any = false;
    for (int i : I)
      for (int j : J) any = any || !Ak(i, j).is_zero();
    // draw X_k regardless so streams stay aligned across submatrices
    Mat<F> X(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) X(a, b) = ctx.rand(rng);
    if (!any) continue;
    long long w = c.empty() ? 0 : c[k];
    auto it = out.find(w);
    if (it == out.end()) it = out.emplace(w, zeros<F>(R, C)).first;
    Mat<F>& G = it->second;
    for (std::size_t ii = 0; ii < I.size(); ++ii)
      for (std::size_t jj = 0; jj < J.size(); ++jj) {
        const Gf& v = Ak(I[ii], J[jj]);
        if (v.is_zero()) continue;
        F e = ctx.embed(v);
        bool tight = lead && w == (*pu)[ii] + (*pv)[jj];
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            Eigen::Index r = static_cast<Eigen::Index>(ii) * d + a, cc = static_cast<Eigen::Index>(jj) * d + b;
            G(r, cc) += e * X(a, b);
            if (tight) (*lead)(r, cc) += e * X(a, b);
          }
      }
  }
  return out;
}

struct Bounds {
  bool possible = false;
  long long lo = 0, hi = 0;
  std::vector<long long> pu, pv;  // potentials certifying hi
};

Bounds matching_bounds(const SymbolicMatrix& A, const std::vector<long long>& c, const std::vector<int>& I,
                       const std::vector<int>& J) {
  std::size_t l = I.size();
  WeightGrid up(l, std::vector<std::optional<long long>>(l)), low = up;
  for (std::size_t ii = 0; ii < l; ++ii)
    for (std::size_t jj = 0; jj < l; ++jj)
      for (std::size_t k = 0; k < A.terms.size(); ++k)
        if (!A.terms[k](I[ii], J[jj]).is_zero()) {
          long long w = c[k];
          auto& u = up[ii][jj];
          auto& v = low[ii][jj];
          if (!u || *u < w) u = w;
          if (!v || *v > w) v = w;
        }
  Bounds b;
  auto hi = max_weight_perfect_matching(up, b.pu, b.pv);
  if (!hi) return b;
  b.possible = true;
  b.hi = *hi;
  b.lo = *min_weight_perfect_matching(low);
  return b;
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(uz(n));
  for (int i = 0; i < n; ++i) v[uz(i)] = i;
  return v;
}

// Largest deg det of the blow-up of size d over all l x l submatrices,
// divided by d (rounded down). Candidates are visited by decreasing
// matching bound so the search stops once the bound cannot be beaten.
Degree blowup_degree_oracle(const WeightedSymbolicMatrix& Ac, int l, int d, int trials, Rng& rng) {
  Ac.validate();
  const SymbolicMatrix& A = Ac.base;
  int n = std::max(A.rows, A.cols);
  if (l < 0 || l > std::min(A.rows, A.cols)) throw BadCardinality("ell out of range");
  if (n > kOracleMaxN) throw CapExceeded("oracle limited to n <= " + std::to_string(kOracleMaxN));
  if (l == 0) return Degree(0);
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  std::uint64_t base = rng.next();

  struct Cand {
    std::vector<int> I, J;
    Bounds b;
    std::size_t idx;
  };
  std::vector<Cand> cands;
  auto rs = subsets(A.rows, l), cs = subsets(A.cols, l);
  std::size_t idx = 0;
  for (auto& I : rs)
    for (auto& J : cs) {
      Bounds b = matching_bounds(A, Ac.c, I, J);
      if (b.possible) cands.push_back({I, J, b, idx});
      ++idx;
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.b.hi > y.b.hi; });

  Degree best = Degree::neg_inf();
  for (const Cand& cd : cands) {
    if (!best.is_neg_inf() && cd.b.hi <= best.value()) break;
    long long lo = cd.b.lo * d, hi = cd.b.hi * d;
    for (int tr = 0; tr < trials; ++tr) {
      Rng stream = Rng(base).split(cd.idx * 1024 + static_cast<std::uint64_t>(tr));
      Degree got = with_sampling_field(A.p, [&](const auto& ctx) {
        using F = typename std::decay_t<decltype(ctx)>::F;
        Mat<F> lead;
        auto groups = kron_by_weight(A, Ac.c, cd.I, cd.J, d, ctx, stream, &cd.b.pu, &cd.b.pv, &lead);
        // the t^hi coefficient of det is det of the tight part; nonzero settles it
        if (!is_zero(det(lead))) return Degree(hi);
        Eigen::Index N = static_cast<Eigen::Index>(l) * d;
        auto pts = ctx.points(uz(hi - lo + 1));
        return degdet_from_points<F>(lo, hi, pts, [&](const F& tau) {
          Mat<F> M = zeros<F>(N, N);
          for (auto& [w, G] : groups) {
            F s = fpow(tau, w);
            for (Eigen::Index i = 0; i < N; ++i)
              for (Eigen::Index j = 0; j < N; ++j)
                if (!is_zero(G(i, j))) M(i, j) += s * G(i, j);
          }
          return det(M);
        });
      });
      if (got.is_neg_inf()) continue;
      long long v = got.value();
      // a failed trial can land below a multiple of d; floor keeps it one-sided
      long long q = v >= 0 ? v / d : -((-v + d - 1) / d);
      if (best.is_neg_inf() || q > best.value()) best = Degree(q);
      if (q == cd.b.hi) break;
    }
  }
  return best;
}

}  // namespace

void SymbolicMatrix::validate() const {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  for (const MatF& T : terms) {
    if (T.rows() != rows || T.cols() != cols) throw std::invalid_argument("coefficient matrix has wrong shape");
    for (Eigen::Index i = 0; i < T.rows(); ++i)
      for (Eigen::Index j = 0; j < T.cols(); ++j)
        if (T(i, j).bound() && T(i, j).p() != p) throw FieldMismatch();
  }
}

void WeightedSymbolicMatrix::validate() const {
  base.validate();
  if (c.size() != base.terms.size()) throw std::invalid_argument("weight vector length differs from term count");
}

void RationalSymbolicMatrix::validate() const {
  for (const RationalMatrix& T : terms)
    if (T.rows() != n || T.cols() != n) throw std::invalid_argument("coefficient matrix has wrong shape");
}

Degree RationalSymbolicMatrix::d() const {
  Degree r = Degree::neg_inf();
  for (const auto& T : terms) r = max(r, max_deg(T));
  return r;
}

Degree RationalSymbolicMatrix::d0() const {
  Degree r = Degree::pos_inf();
  for (const auto& T : terms) r = min(r, min_mindeg(T));
  return r;
}

SymbolicMatrix make_symbolic(int rows, int cols, std::uint32_t p, std::vector<MatF> terms) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  for (MatF& T : terms) T = T.unaryExpr([p](const Gf& x) { return x.bind(p); });
  SymbolicMatrix A{rows, cols, p, std::move(terms)};
  A.validate();
  return A;
}

SymbolicMatrix zero_symbolic(int rows, int cols, std::uint32_t p) { return make_symbolic(rows, cols, p, {}); }

SymbolicMatrix pad_square(const SymbolicMatrix& A) {
  int n = std::max(A.rows, A.cols);
  SymbolicMatrix B{n, n, A.p, {}};
  for (const MatF& T : A.terms) {
    MatF Z = zeros<Gf>(n, n).unaryExpr([&](const Gf& x) { return x.bind(A.p); });
    Z.topLeftCorner(A.rows, A.cols) = T;
    B.terms.push_back(Z);
  }
  return B;
}

WeightedSymbolicMatrix pad_square(const WeightedSymbolicMatrix& A) { return {pad_square(A.base), A.c}; }

SymbolicMatrix submatrix(const SymbolicMatrix& A, const std::vector<int>& I, const std::vector<int>& J) {
  SymbolicMatrix B{static_cast<int>(I.size()), static_cast<int>(J.size()), A.p, {}};
  for (const MatF& T : A.terms) {
    MatF S(B.rows, B.cols);
    for (std::size_t i = 0; i < I.size(); ++i)
      for (std::size_t j = 0; j < J.size(); ++j) S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = T(I[i], J[j]);
    B.terms.push_back(S);
  }
  return B;
}

RationalSymbolicMatrix to_rational_symbolic(const WeightedSymbolicMatrix& Ac) {
  Ac.validate();
  if (Ac.base.rows != Ac.base.cols) throw NotSquare();
  RationalSymbolicMatrix B{Ac.base.rows, Ac.base.p, {}};
  for (std::size_t k = 0; k < Ac.base.terms.size(); ++k) {
    RationalMatrix R = to_rational(Ac.base.terms[k]);
    RatFn tc = RatFn::monomial(Gf(1, Ac.base.p), Ac.c[k]);
    for (Eigen::Index i = 0; i < R.rows(); ++i)
      for (Eigen::Index j = 0; j < R.cols(); ++j)
        if (!R(i, j).is_zero()) R(i, j) = R(i, j) * tc;
    B.terms.push_back(R);
  }
  return B;
}

RationalSymbolicMatrix to_rational_symbolic(const SymbolicMatrix& A) {
  return to_rational_symbolic(WeightedSymbolicMatrix{A, std::vector<long long>(A.terms.size(), 0)});
}

bool is_skew_symmetric(const SymbolicMatrix& A) {
  if (A.rows != A.cols) return false;
  for (const MatF& T : A.terms)
    for (int i = 0; i < A.rows; ++i) {
      if (!T(i, i).is_zero()) return false;
      for (int j = i + 1; j < A.cols; ++j)
        if (T(i, j) + T(j, i) != Gf(0, A.p)) return false;
    }
  return true;
}

SymbolicMatrix blow_up(const SymbolicMatrix& A, int d) {
  if (d < 1) throw std::invalid_argument("blow-up size must be positive");
  A.validate();
  Eigen::Index R = static_cast<Eigen::Index>(A.rows) * d, C = static_cast<Eigen::Index>(A.cols) * d;
  SymbolicMatrix B{static_cast<int>(R), static_cast<int>(C), A.p, {}};
  B.terms.reserve(A.terms.size() * uz(d) * uz(d));
  MatF Z = zeros<Gf>(R, C).unaryExpr([&](const Gf& x) { return x.bind(A.p); });
  for (const MatF& T : A.terms)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        MatF K = Z;
        for (int i = 0; i < A.rows; ++i)
          for (int j = 0; j < A.cols; ++j) K(static_cast<Eigen::Index>(i) * d + a, static_cast<Eigen::Index>(j) * d + b) = T(i, j);
        B.terms.push_back(K);
      }
  return B;
}

MatF shrink(const SymbolicMatrix& A, const Substitution& s) {
  if (s.values.size() < A.terms.size())
    throw MissingSymbol("substitution covers " + std::to_string(s.values.size()) + " of " +
                        std::to_string(A.terms.size()) + " symbols");
  MatF M = zeros<Gf>(A.rows, A.cols).unaryExpr([&](const Gf& x) { return x.bind(A.p); });
  for (std::size_t k = 0; k < A.terms.size(); ++k) {
    Gf v = s.values[k].bind(A.p);
    if (v.is_zero()) continue;
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < A.cols; ++j)
        if (!A.terms[k](i, j).is_zero()) M(i, j) += v * A.terms[k](i, j);
  }
  return M;
}

RationalMatrix shrink(const WeightedSymbolicMatrix& Ac, const Substitution& s) {
  Ac.validate();
  const SymbolicMatrix& A = Ac.base;
  if (s.values.size() < A.terms.size())
    throw MissingSymbol("substitution covers " + std::to_string(s.values.size()) + " of " +
                        std::to_string(A.terms.size()) + " symbols");
  RationalMatrix M(A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) M(i, j) = RatFn::constant(Gf(0, A.p));
  for (std::size_t k = 0; k < A.terms.size(); ++k) {
    Gf v = s.values[k].bind(A.p);
    if (v.is_zero()) continue;
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < A.cols; ++j)
        if (!A.terms[k](i, j).is_zero()) M(i, j) += RatFn::monomial(v * A.terms[k](i, j), Ac.c[k]);
  }
  return M;
}

Substitution random_substitution(int symbols, std::uint32_t p, Rng& rng) {
  Substitution s;
  for (int k = 0; k < symbols; ++k) s.values.push_back(random_elem(rng, p));
  return s;
}

int blowup_rank_sample(const SymbolicMatrix& A, int d, int trials, Rng& rng) {
  A.validate();
  if (d < 1) throw std::invalid_argument("blow-up size must be positive");
  int full = d * std::min(A.rows, A.cols);
  if (full == 0 || A.terms.empty()) return 0;
  std::uint64_t base = rng.next();
  auto I = iota_vec(A.rows), J = iota_vec(A.cols);
  int best = 0;
  for (int tr = 0; tr < trials && best < full; ++tr) {
    Rng stream = Rng(base).split(static_cast<std::uint64_t>(tr));
    int r = with_sampling_field(A.p, [&](const auto& ctx) {
      using F = typename std::decay_t<decltype(ctx)>::F;
      auto groups = kron_by_weight(A, {}, I, J, d, ctx, stream);
      if (groups.empty()) return 0;
      return rank<F>(groups.begin()->second);
    });
    best = std::max(best, r);
  }
  return best;
}

Degree delta_ell_oracle(const WeightedSymbolicMatrix& Ac, int ell, int trials, Rng& rng) {
  return blowup_degree_oracle(Ac, ell, 1, trials, rng);
}

Degree Delta_blowup_oracle(const WeightedSymbolicMatrix& Ac, int ell, int trials, Rng& rng) {
  return blowup_degree_oracle(Ac, ell, std::max(ell - 1, 1), trials, rng);
}

}  // namespace ncdeg
