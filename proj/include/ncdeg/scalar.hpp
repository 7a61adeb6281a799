#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace ncdeg {

struct ZeroInversion : std::domain_error {
  ZeroInversion() : std::domain_error("inverse of zero field element") {}
};

struct FieldMismatch : std::logic_error {
  FieldMismatch() : std::logic_error("operands live in different prime fields") {}
};

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

// Element of GF(p). A default or int-constructed element carries no modulus
// yet ("unbound"); it adopts the modulus of the first bound operand it meets.
// This lets generic code write F(0) and F(1).
class Gf {
 public:
  Gf() = default;
  Gf(int x) : v_(x), p_(0) {}
  Gf(long long x) : v_(x), p_(0) {}
  Gf(long long x, std::uint32_t p) : v_(reduce(x, p)), p_(p) {}

  std::uint32_t p() const { return p_; }
  bool bound() const { return p_ != 0; }
  // Canonical representative in [0, p-1]; raw integer if unbound.
  long long value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  Gf bind(std::uint32_t p) const { return p_ ? *this : Gf(v_, p); }

  friend Gf operator+(const Gf& a, const Gf& b) {
    std::uint32_t p = common(a, b);
    if (!p) return Gf(a.v_ + b.v_);
    long long s = a.rep(p) + b.rep(p);
    if (s >= p) s -= p;
    return raw(s, p);
  }
  friend Gf operator-(const Gf& a, const Gf& b) {
    std::uint32_t p = common(a, b);
    if (!p) return Gf(a.v_ - b.v_);
    long long s = a.rep(p) - b.rep(p);
    if (s < 0) s += p;
    return raw(s, p);
  }
  friend Gf operator*(const Gf& a, const Gf& b) {
    std::uint32_t p = common(a, b);
    if (!p) return Gf(a.v_ * b.v_);
    return raw(static_cast<long long>((static_cast<std::uint64_t>(a.rep(p)) * b.rep(p)) % p), p);
  }
  friend Gf operator/(const Gf& a, const Gf& b);
  Gf operator-() const {
    if (!p_) return Gf(-v_);
    return raw(v_ ? p_ - v_ : 0, p_);
  }
  Gf& operator+=(const Gf& o) { return *this = *this + o; }
  Gf& operator-=(const Gf& o) { return *this = *this - o; }
  Gf& operator*=(const Gf& o) { return *this = *this * o; }
  Gf& operator/=(const Gf& o) { return *this = *this / o; }

  friend bool operator==(const Gf& a, const Gf& b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    if (!p) return a.v_ == b.v_;
    return a.rep(p) == b.rep(p);
  }
  friend bool operator!=(const Gf& a, const Gf& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Gf& a) { return os << a.v_; }

 private:
  static long long reduce(long long x, std::uint32_t p) {
    long long r = x % static_cast<long long>(p);
    return r < 0 ? r + p : r;
  }
  static Gf raw(long long v, std::uint32_t p) {
    Gf g;
    g.v_ = v;
    g.p_ = p;
    return g;
  }
  static std::uint32_t common(const Gf& a, const Gf& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw FieldMismatch();
    return a.p_ ? a.p_ : b.p_;
  }
  long long rep(std::uint32_t p) const { return p_ ? v_ : reduce(v_, p); }

  long long v_ = 0;
  std::uint32_t p_ = 0;
};

Gf ff_inv(const Gf& a);
Gf ff_pow(Gf a, std::uint64_t e);

inline bool is_zero(const Gf& a) { return a.is_zero(); }
inline Gf inv(const Gf& a) { return ff_inv(a); }

// Seeded stream. Child streams are derived deterministically from the
// parent seed and a stream index, so parallel tasks never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}
  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return eng_(); }
  long long uniform(long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(eng_);
  }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

Gf random_elem(Rng& rng, std::uint32_t p);
Gf random_nonzero(Rng& rng, std::uint32_t p);
std::vector<Gf> nonzero_points(std::uint32_t p, std::size_t n);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace ncdeg

namespace Eigen {
template <>
struct NumTraits<ncdeg::Gf> : GenericNumTraits<ncdeg::Gf> {
  typedef ncdeg::Gf Real;
  typedef ncdeg::Gf NonInteger;
  typedef ncdeg::Gf Literal;
  typedef ncdeg::Gf Nested;
  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace ncdeg {

template <typename F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <typename F>
using Vec = Eigen::Matrix<F, Eigen::Dynamic, 1>;

using MatF = Mat<Gf>;

}  // namespace ncdeg
