#include "ncdeg/ratfunc.hpp"

#include <algorithm>
#include <sstream>

#include "ncdeg/assignment.hpp"
#include "ncdeg/interp.hpp"

namespace ncdeg {

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<std::uint32_t> c, std::uint32_t p) : c_(std::move(c)), p_(p) {
  if (!p) throw std::invalid_argument("Poly: modulus required");
  for (auto& x : c_) x %= p;
  trim();
}

Poly Poly::monomial(const Gf& a, int e) {
  if (!a.bound()) throw std::invalid_argument("Poly::monomial: unbound coefficient");
  Poly r;
  r.p_ = a.p();
  if (!a.is_zero()) {
    r.c_.assign(static_cast<std::size_t>(e) + 1, 0);
    r.c_[static_cast<std::size_t>(e)] = static_cast<std::uint32_t>(a.value());
  }
  return r;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::deg() const {
  if (!p_) return k_ ? 0 : -1;
  return static_cast<int>(c_.size()) - 1;
}

int Poly::val() const {
  if (!p_) return k_ ? 0 : -1;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) return static_cast<int>(i);
  return -1;
}

Gf Poly::coef(int i) const {
  if (!p_) return i == 0 ? Gf(k_) : Gf(0);
  if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return Gf(0, p_);
  return Gf(static_cast<long long>(c_[static_cast<std::size_t>(i)]), p_);
}

bool Poly::is_monomial() const {
  if (!p_) return true;
  int nz = 0;
  for (auto x : c_) nz += x != 0;
  return nz <= 1;
}

Poly Poly::bind(std::uint32_t p) const {
  if (p_ || !p) return *this;
  Poly r;
  r.p_ = p;
  long long v = k_ % static_cast<long long>(p);
  if (v < 0) v += p;
  if (v) r.c_.push_back(static_cast<std::uint32_t>(v));
  return r;
}

std::uint32_t Poly::common(const Poly& a, const Poly& b) {
  if (a.p_ && b.p_ && a.p_ != b.p_) throw FieldMismatch();
  return a.p_ ? a.p_ : b.p_;
}

Poly Poly::shift(int e) const {
  if (!p_ || c_.empty() || e == 0) {
    if (!p_ && k_ && e) throw std::logic_error("Poly::shift on unbound constant");
    return *this;
  }
  Poly r;
  r.p_ = p_;
  r.c_.assign(static_cast<std::size_t>(e), 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::unshift(int e) const {
  if (e == 0 || is_zero()) return *this;
  if (val() < e) throw std::logic_error("Poly::unshift below valuation");
  Poly r;
  r.p_ = p_;
  r.c_.assign(c_.begin() + e, c_.end());
  return r;
}

Poly Poly::scale(const Gf& a) const {
  if (!p_) return Poly(k_ * a.value()).bind(a.p());
  Poly r;
  r.p_ = p_;
  std::uint64_t s = static_cast<std::uint64_t>(a.bind(p_).value());
  if (s == 0) return r;
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = static_cast<std::uint32_t>((c_[i] * s) % p_);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  if (!p_) {
    if (k_ == 1) return *this;
    throw std::logic_error("Poly::monic on unbound constant");
  }
  return scale(ff_inv(lead()));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::uint32_t p = Poly::common(a, b);
  if (!p) return Poly(a.k_ + b.k_);
  const Poly& x = a.p_ ? a : a.bind(p);
  const Poly& y = b.p_ ? b : b.bind(p);
  Poly r;
  r.p_ = p;
  r.c_.assign(std::max(x.c_.size(), y.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    std::uint64_t s = (i < x.c_.size() ? x.c_[i] : 0ULL) + (i < y.c_.size() ? y.c_[i] : 0ULL);
    r.c_[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  if (!p_) return Poly(-k_);
  Poly r = *this;
  for (auto& x : r.c_) x = x ? p_ - x : 0;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  std::uint32_t p = Poly::common(a, b);
  if (!p) return Poly(a.k_ * b.k_);
  const Poly x = a.bind(p);
  const Poly y = b.bind(p);
  Poly r;
  r.p_ = p;
  if (x.c_.empty() || y.c_.empty()) return r;
  std::vector<std::uint64_t> acc(x.c_.size() + y.c_.size() - 1, 0);
  const std::uint64_t lim = ~0ULL - static_cast<std::uint64_t>(p - 1) * (p - 1);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (!x.c_[i]) continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j) {
      std::uint64_t& s = acc[i + j];
      s += static_cast<std::uint64_t>(x.c_[i]) * y.c_[j];
      if (s >= lim) s %= p;
    }
  }
  r.c_.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i] % p);
  r.trim();
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  std::uint32_t p = a.p_ ? a.p_ : b.p_;
  if (!p) return a.k_ == b.k_;
  return a.bind(p).c_ == b.bind(p).c_;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  if (!p_) return std::to_string(k_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c_[i] != 1) os << c_[i];
    if (i > 0) {
      if (c_[i] != 1) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw ZeroInversion();
  std::uint32_t p = a.p() ? a.p() : b.p();
  if (!p) {
    if (b.deg() != 0 || (b.coef(0).value() != 1 && b.coef(0).value() != -1))
      throw std::logic_error("divmod on unbound operands");
    q = Poly(a.coef(0).value() * b.coef(0).value());
    r = Poly(0);
    return;
  }
  Poly x = a.bind(p), y = b.bind(p);
  int db = y.deg();
  Gf ilead = ff_inv(y.lead());
  std::vector<std::uint32_t> rem = x.coeffs();
  int dr = x.deg();
  std::vector<std::uint32_t> quo(static_cast<std::size_t>(std::max(dr - db + 1, 0)), 0);
  const auto& yc = y.coeffs();
  for (int d = dr; d >= db; --d) {
    std::uint32_t c = rem[static_cast<std::size_t>(d)];
    if (!c) continue;
    std::uint64_t f = (static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(ilead.value())) % p;
    quo[static_cast<std::size_t>(d - db)] = static_cast<std::uint32_t>(f);
    for (int j = 0; j <= db; ++j) {
      std::size_t idx = static_cast<std::size_t>(d - db + j);
      std::uint64_t sub = (f * yc[static_cast<std::size_t>(j)]) % p;
      rem[idx] = static_cast<std::uint32_t>((rem[idx] + p - sub) % p);
    }
  }
  q = Poly(quo.empty() ? std::vector<std::uint32_t>{} : quo, p);
  rem.resize(static_cast<std::size_t>(std::max(db, 0)));
  r = Poly(rem, p);
}

Poly gcd(const Poly& a, const Poly& b) {
  std::uint32_t p = a.p() ? a.p() : b.p();
  Poly x = a.bind(p), y = b.bind(p);
  while (!y.is_zero()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

Poly exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

// ---------------------------------------------------------------- RatFn

RatFn::RatFn(const Poly& n, const Poly& d) : num_(n), den_(d) {
  if (d.is_zero()) throw ZeroInversion();
  std::uint32_t p = n.p() ? n.p() : d.p();
  if (p) {
    num_ = num_.bind(p);
    den_ = den_.bind(p);
  }
  tidy();
}

RatFn RatFn::monomial(const Gf& a, long long e) {
  if (!a.bound()) throw std::invalid_argument("RatFn::monomial: unbound coefficient");
  if (e >= 0) return RatFn(Poly::monomial(a, static_cast<int>(e)), Poly::constant(Gf(1, a.p())));
  return RatFn(Poly::constant(a), Poly::monomial(Gf(1, a.p()), static_cast<int>(-e)));
}

void RatFn::tidy() {
  std::uint32_t p = num_.p() ? num_.p() : den_.p();
  if (!p) return;
  num_ = num_.bind(p);
  den_ = den_.bind(p);
  if (num_.is_zero()) {
    den_ = Poly::constant(Gf(1, p));
    return;
  }
  int v = std::min(num_.val(), den_.val());
  if (v > 0) {
    num_ = num_.unshift(v);
    den_ = den_.unshift(v);
  }
  Gf l = den_.lead();
  if (l.value() != 1) {
    Gf il = ff_inv(l);
    num_ = num_.scale(il);
    den_ = den_.scale(il);
  }
  if (den_.deg() > 8 && !den_.is_monomial()) *this = reduced();
}

RatFn RatFn::reduced() const {
  if (num_.is_zero() || den_.deg() <= 0 || !p()) return *this;
  Poly g = gcd(num_, den_);
  RatFn r;
  r.num_ = exact_div(num_, g);
  r.den_ = exact_div(den_, g);
  Gf l = r.den_.lead();
  if (l.value() != 1) {
    Gf il = ff_inv(l);
    r.num_ = r.num_.scale(il);
    r.den_ = r.den_.scale(il);
  }
  return r;
}

Gf RatFn::coeff_at_infinity(long long e) const {
  Degree d = deg(*this);
  std::uint32_t q = p();
  if (d.is_neg_inf() || d < Degree(e)) return q ? Gf(0, q) : Gf(0);
  if (d > Degree(e)) throw std::domain_error("coeff_at_infinity: degree exceeds requested power");
  return num_.lead() / den_.lead();
}

RatFn operator+(const RatFn& a, const RatFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
  if (a.den_.is_monomial() && b.den_.is_monomial()) {
    int da = a.den_.deg(), db = b.den_.deg();
    int m = std::max(da, db);
    return RatFn(a.num_.shift(m - da) + b.num_.shift(m - db), da >= db ? a.den_ : b.den_);
  }
  return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

RatFn operator*(const RatFn& a, const RatFn& b) {
  if (a.is_zero() || b.is_zero()) {
    std::uint32_t p = a.p() ? a.p() : b.p();
    return p ? RatFn(Poly::constant(Gf(0, p))) : RatFn(0);
  }
  return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

RatFn inv(const RatFn& r) {
  if (r.is_zero()) throw ZeroInversion();
  return RatFn(r.den(), r.num());
}

RatFn operator/(const RatFn& a, const RatFn& b) { return a * inv(b); }

bool operator==(const RatFn& a, const RatFn& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

std::string RatFn::str() const {
  if (den_.deg() <= 0) return num_.str();
  std::string n = num_.str(), d = den_.str();
  bool nm = num_.is_monomial(), dm = den_.is_monomial();
  return (nm ? n : "(" + n + ")") + "/" + (dm ? d : "(" + d + ")");
}

Degree deg(const RatFn& r) {
  if (r.is_zero()) return Degree::neg_inf();
  return Degree(r.num().deg() - r.den().deg());
}

Degree mindeg(const RatFn& r) {
  if (r.is_zero()) return Degree::pos_inf();
  return Degree(r.num().val() - r.den().deg());
}

// ---------------------------------------------------------------- matrices

RationalMatrix to_rational(const MatF& A) {
  RationalMatrix R(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      R(i, j) = A(i, j).bound() ? RatFn::constant(A(i, j)) : RatFn(A(i, j).value());
  return R;
}

RationalMatrix t_power_diag(const std::vector<long long>& e, std::uint32_t p) {
  Eigen::Index n = static_cast<Eigen::Index>(e.size());
  RationalMatrix D = RationalMatrix::Constant(n, n, RatFn(Poly::constant(Gf(0, p))));
  for (Eigen::Index i = 0; i < n; ++i) D(i, i) = RatFn::monomial(Gf(1, p), e[static_cast<std::size_t>(i)]);
  return D;
}

Degree max_deg(const RationalMatrix& M) {
  Degree d = Degree::neg_inf();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) d = max(d, deg(M(i, j)));
  return d;
}

Degree min_mindeg(const RationalMatrix& M) {
  Degree d = Degree::pos_inf();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) d = min(d, mindeg(M(i, j)));
  return d;
}

namespace {

std::uint32_t matrix_prime(const RationalMatrix& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(i, j).p()) return M(i, j).p();
  return 0;
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.deg() <= 0) return b.monic();
  if (b.deg() <= 0) return a.monic();
  if (a.is_monomial() && b.is_monomial()) return a.deg() >= b.deg() ? a.monic() : b.monic();
  return exact_div(a * b, gcd(a, b)).monic();
}

// Clears denominators row by row. Returns the polynomial grid and the total
// degree of the row multipliers.
std::vector<std::vector<Poly>> clear_rows(const RationalMatrix& M, std::uint32_t p, long long& shift) {
  shift = 0;
  std::vector<std::vector<Poly>> G(static_cast<std::size_t>(M.rows()));
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Poly L = Poly::constant(Gf(1, p));
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) L = lcm(L, M(i, j).den().bind(p));
    shift += L.deg();
    auto& row = G[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const RatFn& e = M(i, j);
      if (e.is_zero())
        row.push_back(Poly::constant(Gf(0, p)));
      else
        row.push_back(e.num().bind(p) * exact_div(L, e.den().bind(p)));
    }
  }
  return G;
}

// Fraction-free elimination. Returns the rank; *det receives the determinant
// when the grid is square.
int bareiss(std::vector<std::vector<Poly>> G, std::uint32_t p, Poly* det) {
  std::size_t rows = G.size(), cols = rows ? G[0].size() : 0;
  Poly prev = Poly::constant(Gf(1, p));
  std::size_t r = 0;
  bool neg = false;
  bool full = true;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!G[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) {
      full = false;
      continue;
    }
    if (sel != r) {
      std::swap(G[sel], G[r]);
      neg = !neg;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        G[i][j] = exact_div(G[r][c] * G[i][j] - G[i][c] * G[r][j], prev);
      G[i][c] = Poly::constant(Gf(0, p));
    }
    prev = G[r][c];
    ++r;
  }
  if (det) {
    if (rows != cols || !full || r < rows)
      *det = Poly::constant(Gf(0, p));
    else
      *det = neg ? -prev : prev;
  }
  return static_cast<int>(r);
}

template <typename F>
Degree degdet_eval(const std::vector<std::vector<Poly>>& G, long long lo, long long hi, const std::vector<F>& pts) {
  std::size_t n = G.size();
  return degdet_from_points(lo, hi, pts, [&](const F& tau) {
    Mat<F> A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = G[i][j].eval(tau);
    return det(A);
  });
}

}  // namespace

int mat_rank(const RationalMatrix& M) {
  std::uint32_t p = matrix_prime(M);
  if (!p) {
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      for (Eigen::Index j = 0; j < M.cols(); ++j)
        if (!M(i, j).is_zero()) throw std::invalid_argument("mat_rank: matrix carries no modulus");
    return 0;
  }
  long long shift;
  auto G = clear_rows(M, p, shift);
  return bareiss(G, p, nullptr);
}

Degree mat_degdet(const RationalMatrix& M) {
  if (M.rows() != M.cols()) throw NotSquare();
  std::size_t n = static_cast<std::size_t>(M.rows());
  if (n == 0) return Degree(0);
  std::uint32_t p = matrix_prime(M);
  if (!p) return Degree::neg_inf();
  long long shift;
  auto G = clear_rows(M, p, shift);
  WeightGrid up(n, std::vector<std::optional<long long>>(n)), low = up;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!G[i][j].is_zero()) {
        up[i][j] = G[i][j].deg();
        low[i][j] = G[i][j].val();
      }
  auto hi = max_weight_perfect_matching(up);
  if (!hi) return Degree::neg_inf();
  long long lo = *min_weight_perfect_matching(low);
  std::size_t need = static_cast<std::size_t>(*hi - lo + 1);
  Degree d;
  if (need <= p - 1) {
    d = degdet_eval<Gf>(G, lo, *hi, nonzero_points(p, need));
  } else if (p < 65536 && need <= gfq_tables(p).q - 1) {
    d = degdet_eval<Gfq>(G, lo, *hi, nonzero_points(gfq_tables(p), need));
  } else {
    Poly D;
    bareiss(G, p, &D);
    d = D.is_zero() ? Degree::neg_inf() : Degree(D.deg());
  }
  return d - Degree(shift);
}

Degree mat_degdet_bareiss(const RationalMatrix& M) {
  if (M.rows() != M.cols()) throw NotSquare();
  if (M.rows() == 0) return Degree(0);
  std::uint32_t p = matrix_prime(M);
  if (!p) return Degree::neg_inf();
  long long shift;
  auto G = clear_rows(M, p, shift);
  Poly D;
  bareiss(G, p, &D);
  if (D.is_zero()) return Degree::neg_inf();
  return Degree(D.deg() - shift);
}

MatF leading_coeff_matrix(const RationalMatrix& M, const std::vector<long long>& alpha,
                          const std::vector<long long>& beta) {
  if (alpha.size() != static_cast<std::size_t>(M.rows()) || beta.size() != static_cast<std::size_t>(M.cols()))
    throw std::invalid_argument("leading_coeff_matrix: shift length mismatch");
  std::uint32_t p = matrix_prime(M);
  MatF L = zeros<Gf>(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const RatFn& e = M(i, j);
      if (e.is_zero()) continue;
      long long d = deg(e).value() + alpha[static_cast<std::size_t>(i)] + beta[static_cast<std::size_t>(j)];
      if (d > 0)
        throw InfeasibleShift("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") has positive degree " + std::to_string(d) + " after shifting");
      if (d == 0) L(i, j) = e.num().lead() / e.den().lead();
    }
  if (p)
    for (Eigen::Index i = 0; i < L.rows(); ++i)
      for (Eigen::Index j = 0; j < L.cols(); ++j) L(i, j) = L(i, j).bind(p);
  return L;
}

MatF constant_term_matrix(const RationalMatrix& M) {
  return leading_coeff_matrix(M, std::vector<long long>(static_cast<std::size_t>(M.rows()), 0),
                              std::vector<long long>(static_cast<std::size_t>(M.cols()), 0));
}

BiproperFlag biproper_flag(const RationalMatrix& M) {
  BiproperFlag f;
  f.is_proper = max_deg(M) <= Degree(0);
  if (f.is_proper && M.rows() == M.cols()) f.leading_invertible = rank(constant_term_matrix(M)) == M.rows();
  return f;
}

RationalMatrix biproper_inverse(const RationalMatrix& M) {
  if (M.rows() != M.cols() || !biproper_flag(M).biproper()) throw NotBiproper();
  RationalMatrix R = inverse(M);
  for (Eigen::Index i = 0; i < R.rows(); ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j) R(i, j) = R(i, j).reduced();
  if (!biproper_flag(R).biproper()) throw std::logic_error("biproper_inverse: result not biproper");
  return R;
}

}  // namespace ncdeg
