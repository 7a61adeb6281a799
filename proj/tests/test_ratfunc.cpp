#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "ncdeg/ratfunc.hpp"

using namespace ncdeg;

namespace {

const std::uint32_t P = 65521;

RatFn t_pow(long long e, std::uint32_t p = P) { return RatFn::monomial(Gf(1, p), e); }
RatFn cst(long long c, std::uint32_t p = P) { return RatFn::constant(Gf(c, p)); }

Poly rand_poly(Rng& rng, int maxdeg, std::uint32_t p) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(maxdeg) + 1);
  for (auto& x : c) x = static_cast<std::uint32_t>(rng.uniform(0, p - 1));
  return Poly(c, p);
}

RationalMatrix rand_poly_matrix(Rng& rng, int n, int maxdeg, std::uint32_t p) {
  RationalMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = RatFn(rand_poly(rng, maxdeg, p));
  return M;
}

// Leibniz expansion: independent of elimination.
Poly leibniz(const RationalMatrix& M, std::uint32_t p) {
  int n = static_cast<int>(M.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Poly total = Poly::constant(Gf(0, p));
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    Poly term = Poly::constant(Gf(inversions % 2 ? p - 1 : 1, p));
    for (int i = 0; i < n; ++i) term = term * M(i, perm[static_cast<std::size_t>(i)]).num();
    total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("deg and mindeg") {
  RatFn a = t_pow(3) + cst(1);
  CHECK(deg(a) == Degree(3));
  CHECK(deg(RatFn(Poly::constant(Gf(0, P)))).is_neg_inf());
  CHECK(deg((t_pow(2) + cst(1)) / t_pow(5)) == Degree(-3));
  CHECK(mindeg(t_pow(1) + t_pow(3)) == Degree(1));
  CHECK(mindeg((t_pow(3) + t_pow(1)) / t_pow(2)) == Degree(-1));
  CHECK(mindeg(RatFn(Poly::constant(Gf(0, P)))).is_pos_inf());
}

TEST_CASE("degree is a valuation on random rational functions") {
  Rng rng(11);
  for (int it = 0; it < 300; ++it) {
    RatFn r(rand_poly(rng, 4, 101), rand_poly(rng, 3, 101) + Poly::constant(Gf(1, 101)));
    RatFn s(rand_poly(rng, 4, 101), rand_poly(rng, 2, 101) + Poly::monomial(Gf(1, 101), 3));
    if (r.is_zero() || s.is_zero()) continue;
    REQUIRE(deg(r * s) == deg(r) + deg(s));
    REQUIRE(deg(r + s) <= max(deg(r), deg(s)));
    REQUIRE(mindeg(r * s) >= mindeg(r) + mindeg(s));
    REQUIRE((r / s) * s == r);
  }
}

TEST_CASE("mat_rank") {
  for (int n = 1; n <= 4; ++n) CHECK(mat_rank(to_rational(identity<Gf>(n).unaryExpr([](const Gf& x) { return x.bind(P); }))) == n);
  RationalMatrix M(2, 2);
  M << t_pow(1), cst(1), t_pow(2), t_pow(1);
  CHECK(mat_rank(M) == 1);
  Rng rng(5);
  int checked = 0;
  while (checked < 20) {
    RationalMatrix R = rand_poly_matrix(rng, 4, 2, P);
    if (leibniz(R, P).is_zero()) continue;
    CHECK(mat_rank(R) == 4);
    ++checked;
  }
}

TEST_CASE("mat_degdet examples") {
  RationalMatrix D(2, 2);
  D << t_pow(2), cst(0), cst(0), t_pow(3);
  CHECK(mat_degdet(D) == Degree(5));
  RationalMatrix S(2, 2);
  S << t_pow(1), cst(1), t_pow(1), cst(1);
  CHECK(mat_degdet(S).is_neg_inf());
  RationalMatrix T(2, 2);
  T << t_pow(1), cst(1), cst(1), t_pow(1);
  CHECK(mat_degdet(T) == Degree(2));
  CHECK_THROWS_AS(mat_degdet(RationalMatrix(2, 3)), NotSquare);
}

TEST_CASE("mat_degdet agrees with Leibniz expansion up to 4x4, degree <= 3") {
  for (std::uint32_t p : {2u, 3u, 65521u}) {
    Rng rng(p * 7 + 1);
    for (int it = 0; it < 60; ++it) {
      int n = 1 + static_cast<int>(rng.uniform(0, 3));
      RationalMatrix M = rand_poly_matrix(rng, n, 3, p);
      Poly L = leibniz(M, p);
      Degree expect = L.is_zero() ? Degree::neg_inf() : Degree(L.deg());
      REQUIRE(mat_degdet(M) == expect);
      REQUIRE(mat_degdet_bareiss(M) == expect);
    }
  }
}

TEST_CASE("mat_degdet is multiplicative and bounded on proper matrices") {
  Rng rng(17);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + static_cast<int>(rng.uniform(0, 2));
    RationalMatrix A = rand_poly_matrix(rng, n, 2, P), B = rand_poly_matrix(rng, n, 2, P);
    for (int i = 0; i < n; ++i) B(i, 0) = B(i, 0) / (t_pow(1) + cst(3));
    Degree da = mat_degdet(A), db = mat_degdet(B);
    if (da.is_neg_inf() || db.is_neg_inf()) continue;
    RationalMatrix AB = mul(A, B);
    REQUIRE(mat_degdet(AB) == da + db);
    // proper: divide every entry by t^3
    RationalMatrix Pm = A;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Pm(i, j) = Pm(i, j) / t_pow(2);
    REQUIRE(mat_degdet(Pm) <= Degree(0));
  }
}

TEST_CASE("leading_coeff_matrix") {
  RationalMatrix M(2, 2);
  M << t_pow(1), cst(1), t_pow(2), t_pow(1);
  // entry (1,1) keeps degree 1 under alpha=(0,-1), beta=(0,0)
  CHECK_THROWS_AS(leading_coeff_matrix(M, {0, -1}, {0, 0}), InfeasibleShift);
  MatF L = leading_coeff_matrix(M, {0, -1}, {-2, 0});
  CHECK(L(0, 0) == Gf(0, P));
  CHECK(L(0, 1) == Gf(1, P));
  CHECK(L(1, 0) == Gf(0, P));
  CHECK(L(1, 1) == Gf(1, P));

  RationalMatrix Pm(2, 2);
  Pm << cst(2) + t_pow(-1), t_pow(-2), cst(5), cst(3) + t_pow(-3);
  MatF C = constant_term_matrix(Pm);
  CHECK(C(0, 0) == Gf(2, P));
  CHECK(C(0, 1) == Gf(0, P));
  CHECK(C(1, 0) == Gf(5, P));
  CHECK(C(1, 1) == Gf(3, P));

  RationalMatrix one(1, 1);
  one << t_pow(1);
  CHECK_THROWS_AS(leading_coeff_matrix(one, {0}, {0}), InfeasibleShift);
}

TEST_CASE("biproper_inverse") {
  RationalMatrix I = to_rational(identity<Gf>(3).unaryExpr([](const Gf& x) { return x.bind(P); }));
  CHECK(biproper_inverse(I) == I);
  RationalMatrix U(2, 2);
  U << cst(1), t_pow(-1), cst(0), cst(1);
  RationalMatrix Ui(2, 2);
  Ui << cst(1), -t_pow(-1), cst(0), cst(1);
  CHECK(biproper_inverse(U) == Ui);
  Rng rng(23);
  for (int it = 0; it < 20; ++it) {
    RationalMatrix M = I;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) M(i, j) = RatFn::monomial(random_elem(rng, P), -1 - rng.uniform(0, 2));
    RationalMatrix Mi = biproper_inverse(M);
    REQUIRE(mul(M, Mi) == I);
    REQUIRE(biproper_flag(Mi).biproper());
  }
  RationalMatrix notp(1, 1);
  notp << t_pow(1);
  CHECK_THROWS_AS(biproper_inverse(notp), NotBiproper);
}
