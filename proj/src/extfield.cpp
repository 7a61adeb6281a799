#include "ncdeg/extfield.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace ncdeg {

namespace {

// Try f(x) = x^k + sum f_j x^j; fill exp/log if x generates the unit group.
bool try_primitive(GfqTables& t, const std::vector<std::uint32_t>& f) {
  std::uint32_t p = t.p;
  int k = t.k;
  std::uint32_t n = t.q - 1;
  std::vector<std::uint32_t> cur(static_cast<std::size_t>(k), 0);
  cur[0] = 1;
  auto encode = [&](const std::vector<std::uint32_t>& c) {
    std::uint32_t e = 0;
    for (int j = k - 1; j >= 0; --j) e = e * p + c[static_cast<std::size_t>(j)];
    return static_cast<std::int32_t>(e);
  };
  std::fill(t.log.begin(), t.log.end(), -1);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::int32_t e = encode(cur);
    if (i > 0 && e == 1) return false;
    t.exp[i] = e;
    t.log[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(i);
    // cur *= x mod f
    std::uint32_t top = cur[static_cast<std::size_t>(k - 1)];
    for (int j = k - 1; j > 0; --j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)];
    cur[0] = 0;
    if (top)
      for (int j = 0; j < k; ++j)
        cur[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(
            (cur[static_cast<std::size_t>(j)] + static_cast<std::uint64_t>(p - f[static_cast<std::size_t>(j)]) * top) % p);
  }
  return encode(cur) == 1;
}

std::unique_ptr<GfqTables> build(std::uint32_t p) {
  auto t = std::make_unique<GfqTables>();
  t->p = p;
  std::uint32_t q = p;
  int k = 1;
  while (static_cast<std::uint64_t>(q) * p <= 65536) {
    q *= p;
    ++k;
  }
  t->k = k;
  t->q = q;
  t->exp.assign(q - 1, 0);
  t->log.assign(q, -1);
  std::vector<std::uint32_t> f(static_cast<std::size_t>(k), 0);
  bool found = false;
  for (std::uint64_t code = 1; code < q && !found; ++code) {
    std::uint64_t c = code;
    for (int j = 0; j < k; ++j) {
      f[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (f[0] == 0) continue;
    found = try_primitive(*t, f);
  }
  if (!found) throw std::logic_error("no primitive polynomial found");
  t->zech.assign(q - 1, -1);
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    std::uint32_t e = static_cast<std::uint32_t>(t->exp[i]);
    std::uint32_t d0 = e % p;
    std::uint32_t e1 = e - d0 + (d0 + 1) % p;
    t->zech[i] = t->log[e1];
  }
  t->neg_one = t->log[p - 1];
  return t;
}

}  // namespace

const GfqTables& gfq_tables(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<GfqTables>> cache;
  if (!is_prime(p) || p > 65536) throw std::invalid_argument("sampling field needs a prime below 2^16");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = build(p);
  return *slot;
}

Gfq random_elem(Rng& rng, const GfqTables& t) {
  return Gfq::from_encoding(static_cast<std::uint32_t>(rng.uniform(0, static_cast<long long>(t.q) - 1)), t);
}

std::vector<Gfq> nonzero_points(const GfqTables& t, std::size_t n) {
  if (n > t.q - 1) throw std::invalid_argument("nonzero_points: field too small");
  std::vector<Gfq> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Gfq::from_log(static_cast<std::int32_t>(i), t));
  return out;
}

}  // namespace ncdeg
