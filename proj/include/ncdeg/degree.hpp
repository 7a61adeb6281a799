#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ncdeg {

// Integer extended by -inf and +inf.
//   finite + finite  -> ordinary sum
//   -inf + (finite or -inf) -> -inf ; +inf + (finite or +inf) -> +inf
//   -inf + +inf      -> std::domain_error
// Negation swaps the infinities.
class Degree {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  Degree() = default;
  Degree(long long v) : v_(v), k_(Kind::Finite) {}
  static Degree neg_inf() { return Degree(Kind::NegInf); }
  static Degree pos_inf() { return Degree(Kind::PosInf); }

  bool finite() const { return k_ == Kind::Finite; }
  bool is_neg_inf() const { return k_ == Kind::NegInf; }
  bool is_pos_inf() const { return k_ == Kind::PosInf; }
  long long value() const {
    if (!finite()) throw std::domain_error("value() of infinite degree");
    return v_;
  }
  Kind kind() const { return k_; }

  friend Degree operator+(const Degree& a, const Degree& b) {
    if (a.finite() && b.finite()) return Degree(a.v_ + b.v_);
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf()))
      throw std::domain_error("-inf + +inf");
    return a.finite() ? b : a;
  }
  Degree operator-() const {
    if (finite()) return Degree(-v_);
    return is_neg_inf() ? pos_inf() : neg_inf();
  }
  friend Degree operator-(const Degree& a, const Degree& b) { return a + (-b); }

  friend bool operator==(const Degree& a, const Degree& b) {
    return a.k_ == b.k_ && (!a.finite() || a.v_ == b.v_);
  }
  friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }
  friend bool operator<(const Degree& a, const Degree& b) {
    if (a.k_ != b.k_) return static_cast<int>(a.k_) < static_cast<int>(b.k_);
    return a.finite() && a.v_ < b.v_;
  }
  friend bool operator>(const Degree& a, const Degree& b) { return b < a; }
  friend bool operator<=(const Degree& a, const Degree& b) { return !(b < a); }
  friend bool operator>=(const Degree& a, const Degree& b) { return !(a < b); }

  std::string str() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "+inf";
    return std::to_string(v_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.str(); }

 private:
  explicit Degree(Kind k) : v_(0), k_(k) {}
  long long v_ = 0;
  Kind k_ = Kind::Finite;
};

inline Degree max(const Degree& a, const Degree& b) { return a < b ? b : a; }
inline Degree min(const Degree& a, const Degree& b) { return a < b ? a : b; }

}  // namespace ncdeg
