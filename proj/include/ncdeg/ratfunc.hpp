#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ncdeg/degree.hpp"
#include "ncdeg/linalg.hpp"
#include "ncdeg/scalar.hpp"

namespace ncdeg {

// Dense polynomial in t over GF(p), coefficients low to high, no trailing
// zeros. An int-constructed Poly is an unbound constant, as with Gf.
class Poly {
 public:
  Poly() = default;
  Poly(int x) : k_(x) {}
  Poly(long long x) : k_(x) {}
  Poly(std::vector<std::uint32_t> c, std::uint32_t p);
  static Poly monomial(const Gf& a, int e);
  static Poly constant(const Gf& a) { return monomial(a, 0); }

  std::uint32_t p() const { return p_; }
  bool bound() const { return p_ != 0; }
  bool is_zero() const { return p_ ? c_.empty() : k_ == 0; }
  int deg() const;  // -1 for zero
  int val() const;  // lowest nonzero power, -1 for zero
  Gf coef(int i) const;
  Gf lead() const { return coef(deg()); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool is_monomial() const;
  Poly bind(std::uint32_t p) const;

  Poly shift(int e) const;      // * t^e, e >= 0
  Poly unshift(int e) const;    // / t^e, requires val() >= e
  Poly scale(const Gf& a) const;
  Poly monic() const;

  template <typename F>
  F eval(const F& x) const {
    F r = F(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + lift(c_[i], x);
    if (!p_ && k_) r = F(static_cast<long long>(k_));
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const;

 private:
  template <typename F>
  static F lift(std::uint32_t c, const F& like);
  void trim();
  static std::uint32_t common(const Poly& a, const Poly& b);

  std::vector<std::uint32_t> c_;
  std::uint32_t p_ = 0;
  long long k_ = 0;
};

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly gcd(const Poly& a, const Poly& b);
Poly exact_div(const Poly& a, const Poly& b);

// num/den with den monic. Common powers of t are always cancelled; the full
// gcd is taken lazily once the denominator grows.
class RatFn {
 public:
  RatFn() : num_(0), den_(1) {}
  RatFn(int x) : num_(x), den_(1) {}
  RatFn(long long x) : num_(x), den_(1) {}
  RatFn(const Poly& n) : num_(n), den_(1) { tidy(); }
  RatFn(const Poly& n, const Poly& d);
  static RatFn monomial(const Gf& a, long long e);
  static RatFn constant(const Gf& a) { return monomial(a, 0); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::uint32_t p() const { return num_.p() ? num_.p() : den_.p(); }
  bool is_zero() const { return num_.is_zero(); }
  RatFn reduced() const;
  // coefficient of t^e in the Laurent expansion at infinity; requires deg <= e
  // to be meaningful for e = 0 reads of proper functions.
  Gf coeff_at_infinity(long long e) const;

  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b);
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator/(const RatFn& a, const RatFn& b);
  RatFn operator-() const;
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }
  friend bool operator==(const RatFn& a, const RatFn& b);
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const RatFn& r) { return os << r.str(); }

 private:
  void tidy();
  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFn& r) { return r.is_zero(); }
RatFn inv(const RatFn& r);

Degree deg(const RatFn& r);
Degree mindeg(const RatFn& r);

using RationalMatrix = Mat<RatFn>;

struct NotSquare : std::invalid_argument {
  NotSquare() : std::invalid_argument("matrix is not square") {}
};
struct InfeasibleShift : std::domain_error {
  explicit InfeasibleShift(const std::string& m) : std::domain_error(m) {}
};
struct NotBiproper : std::domain_error {
  NotBiproper() : std::domain_error("matrix is not biproper") {}
};

struct BiproperFlag {
  bool is_proper = false;
  bool leading_invertible = false;
  bool biproper() const { return is_proper && leading_invertible; }
};

RationalMatrix to_rational(const MatF& A);
RationalMatrix t_power_diag(const std::vector<long long>& e, std::uint32_t p);
Degree max_deg(const RationalMatrix& M);
Degree min_mindeg(const RationalMatrix& M);

int mat_rank(const RationalMatrix& M);
Degree mat_degdet(const RationalMatrix& M);
// Reference path: fraction-free elimination over GF(p)[t] only.
Degree mat_degdet_bareiss(const RationalMatrix& M);
MatF leading_coeff_matrix(const RationalMatrix& M, const std::vector<long long>& alpha,
                          const std::vector<long long>& beta);
MatF constant_term_matrix(const RationalMatrix& M);  // t^0 coefficient of a proper matrix
BiproperFlag biproper_flag(const RationalMatrix& M);
RationalMatrix biproper_inverse(const RationalMatrix& M);

}  // namespace ncdeg

namespace Eigen {
template <>
struct NumTraits<ncdeg::RatFn> : GenericNumTraits<ncdeg::RatFn> {
  typedef ncdeg::RatFn Real;
  typedef ncdeg::RatFn NonInteger;
  typedef ncdeg::RatFn Literal;
  typedef ncdeg::RatFn Nested;
  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#include "ncdeg/extfield.hpp"

namespace ncdeg {
template <>
inline Gf Poly::lift<Gf>(std::uint32_t c, const Gf& like) {
  return Gf(static_cast<long long>(c), like.p());
}
template <>
inline Gfq Poly::lift<Gfq>(std::uint32_t c, const Gfq& like) {
  return Gfq(Gf(static_cast<long long>(c), like.tables()->p), *like.tables());
}
}  // namespace ncdeg
