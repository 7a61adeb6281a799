#include "ncdeg/scalar.hpp"

namespace ncdeg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Gf ff_pow(Gf a, std::uint64_t e) {
  if (!a.bound()) {
    long long v = 1;
    while (e--) v *= a.value();
    return Gf(v);
  }
  Gf r(1, a.p());
  while (e) {
    if (e & 1) r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

Gf ff_inv(const Gf& a) {
  if (a.is_zero()) throw ZeroInversion();
  if (!a.bound()) {
    if (a.value() == 1 || a.value() == -1) return a;
    throw std::logic_error("inverse of unbound field element");
  }
  // extended Euclid on (value, p)
  long long t = 0, nt = 1, r = a.p(), nr = a.value();
  while (nr) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return Gf(t, a.p());
}

Gf operator/(const Gf& a, const Gf& b) {
  if (!b.bound() && a.bound()) return a * ff_inv(b.bind(a.p()));
  return a * ff_inv(b);
}

Gf random_elem(Rng& rng, std::uint32_t p) { return Gf(rng.uniform(0, static_cast<long long>(p) - 1), p); }

Gf random_nonzero(Rng& rng, std::uint32_t p) { return Gf(rng.uniform(1, static_cast<long long>(p) - 1), p); }

std::vector<Gf> nonzero_points(std::uint32_t p, std::size_t n) {
  if (n > p - 1) throw std::invalid_argument("nonzero_points: field too small");
  std::vector<Gf> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.emplace_back(static_cast<long long>(i), p);
  return out;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(BigInt(s.substr(0, slash)), den);
}

}  // namespace ncdeg
