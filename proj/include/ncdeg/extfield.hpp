#pragma once

#include <cstdint>
#include <vector>

#include "ncdeg/scalar.hpp"

namespace ncdeg {

// Zech-logarithm tables for GF(p^k), k chosen so that p^k is as large as
// possible below 2^16. Used only as a sampling field for random substitution
// when the base prime is too small for Schwartz-Zippel.
struct GfqTables {
  std::uint32_t p = 0;
  int k = 0;
  std::uint32_t q = 0;
  std::vector<std::int32_t> exp;   // log -> base-p encoding
  std::vector<std::int32_t> log;   // encoding -> log, -1 for zero
  std::vector<std::int32_t> zech;  // i -> log(1 + g^i), -1 when zero
  std::int32_t neg_one = 0;
};

const GfqTables& gfq_tables(std::uint32_t p);

class Gfq {
 public:
  Gfq() = default;
  Gfq(int x) : lg_(x), t_(nullptr) {}
  Gfq(long long x) : lg_(static_cast<std::int32_t>(x)), t_(nullptr) {}
  Gfq(const Gf& x, const GfqTables& t) : t_(&t) { lg_ = t.log[static_cast<std::size_t>(x.bind(t.p).value())]; }
  static Gfq from_log(std::int32_t lg, const GfqTables& t) {
    Gfq g;
    g.lg_ = lg;
    g.t_ = &t;
    return g;
  }
  static Gfq from_encoding(std::uint32_t enc, const GfqTables& t) { return from_log(t.log[enc], t); }

  const GfqTables* tables() const { return t_; }
  bool is_zero() const { return t_ ? lg_ < 0 : lg_ == 0; }

  friend Gfq operator+(const Gfq& a, const Gfq& b) {
    const GfqTables* t = a.t_ ? a.t_ : b.t_;
    if (!t) return Gfq(static_cast<long long>(a.lg_) + b.lg_);
    std::int32_t x = a.lg(*t), y = b.lg(*t);
    if (x < 0) return from_log(y, *t);
    if (y < 0) return from_log(x, *t);
    std::int32_t n = static_cast<std::int32_t>(t->q - 1);
    std::int32_t d = y - x;
    if (d < 0) d += n;
    std::int32_t z = t->zech[static_cast<std::size_t>(d)];
    if (z < 0) return from_log(-1, *t);
    z += x;
    if (z >= n) z -= n;
    return from_log(z, *t);
  }
  Gfq operator-() const {
    if (!t_) return Gfq(static_cast<long long>(-lg_));
    if (lg_ < 0) return *this;
    std::int32_t n = static_cast<std::int32_t>(t_->q - 1);
    std::int32_t z = lg_ + t_->neg_one;
    if (z >= n) z -= n;
    return from_log(z, *t_);
  }
  friend Gfq operator-(const Gfq& a, const Gfq& b) { return a + (-b); }
  friend Gfq operator*(const Gfq& a, const Gfq& b) {
    const GfqTables* t = a.t_ ? a.t_ : b.t_;
    if (!t) return Gfq(static_cast<long long>(a.lg_) * b.lg_);
    std::int32_t x = a.lg(*t), y = b.lg(*t);
    if (x < 0 || y < 0) return from_log(-1, *t);
    std::int32_t n = static_cast<std::int32_t>(t->q - 1);
    std::int32_t z = x + y;
    if (z >= n) z -= n;
    return from_log(z, *t);
  }
  friend Gfq inv(const Gfq& a) {
    if (a.is_zero()) throw ZeroInversion();
    if (!a.t_) return a;  // +-1
    std::int32_t n = static_cast<std::int32_t>(a.t_->q - 1);
    return from_log(a.lg_ == 0 ? 0 : n - a.lg_, *a.t_);
  }
  friend Gfq operator/(const Gfq& a, const Gfq& b) {
    const GfqTables* t = a.t_ ? a.t_ : b.t_;
    if (t) return a * inv(b.t_ ? b : from_log(b.lg(*t), *t));
    return a * inv(b);
  }
  Gfq& operator+=(const Gfq& o) { return *this = *this + o; }
  Gfq& operator-=(const Gfq& o) { return *this = *this - o; }
  Gfq& operator*=(const Gfq& o) { return *this = *this * o; }
  Gfq& operator/=(const Gfq& o) { return *this = *this / o; }
  friend bool operator==(const Gfq& a, const Gfq& b) {
    const GfqTables* t = a.t_ ? a.t_ : b.t_;
    if (!t) return a.lg_ == b.lg_;
    return a.lg(*t) == b.lg(*t);
  }
  friend bool operator!=(const Gfq& a, const Gfq& b) { return !(a == b); }

 private:
  std::int32_t lg(const GfqTables& t) const {
    if (t_) return lg_;
    long long r = lg_ % static_cast<long long>(t.p);
    if (r < 0) r += t.p;
    return t.log[static_cast<std::size_t>(r)];
  }
  std::int32_t lg_ = 0;
  const GfqTables* t_ = nullptr;
};

inline bool is_zero(const Gfq& a) { return a.is_zero(); }

Gfq random_elem(Rng& rng, const GfqTables& t);

// First n nonzero elements g^0, g^1, ...; requires n < q.
std::vector<Gfq> nonzero_points(const GfqTables& t, std::size_t n);

}  // namespace ncdeg

namespace Eigen {
template <>
struct NumTraits<ncdeg::Gfq> : GenericNumTraits<ncdeg::Gfq> {
  typedef ncdeg::Gfq Real;
  typedef ncdeg::Gfq NonInteger;
  typedef ncdeg::Gfq Literal;
  typedef ncdeg::Gfq Nested;
  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
