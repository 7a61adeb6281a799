#include "doctest.h"

#include "ncdeg/linalg.hpp"
#include "ncdeg/symbolic.hpp"

using namespace ncdeg;

namespace {

const std::uint32_t P = 65521;

MatF unit(int r, int c, int i, int j, long long v, std::uint32_t p) {
  MatF M = MatF::Constant(r, c, Gf(0, p));
  M(i, j) = Gf(v, p);
  return M;
}

SymbolicMatrix tutte_k3(std::uint32_t p) {
  std::vector<MatF> terms;
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    MatF M = unit(3, 3, i, j, 1, p);
    M(j, i) = Gf(-1, p);
    terms.push_back(M);
  }
  return make_symbolic(3, 3, p, terms);
}

SymbolicMatrix complete_bipartite(int n, std::uint32_t p) {
  std::vector<MatF> terms;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) terms.push_back(unit(n, n, i, j, 1, p));
  return make_symbolic(n, n, p, terms);
}

SymbolicMatrix random_symbolic(Rng& rng, int n, int m, std::uint32_t p, double density) {
  std::vector<MatF> terms;
  for (int k = 0; k < m; ++k) {
    MatF M = MatF::Constant(n, n, Gf(0, p));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.unit() < density) M(i, j) = random_elem(rng, p);
    terms.push_back(M);
  }
  return make_symbolic(n, n, p, terms);
}

}  // namespace

TEST_CASE("blow_up shapes") {
  SymbolicMatrix A = make_symbolic(2, 2, P, {unit(2, 2, 0, 1, 3, P)});
  SymbolicMatrix B1 = blow_up(A, 1);
  CHECK(B1.rows == 2);
  CHECK(B1.m() == 1);
  CHECK(B1.terms[0] == A.terms[0]);
  SymbolicMatrix B2 = blow_up(A, 2);
  CHECK(B2.rows == 4);
  CHECK(B2.cols == 4);
  CHECK(B2.m() == 4);
  SymbolicMatrix T = blow_up(tutte_k3(P), 2);
  CHECK(T.rows == 6);
  CHECK(T.m() == 12);
  Rng rng(1);
  CHECK(rank(shrink(T, random_substitution(T.m(), P, rng))) == 6);
  CHECK_THROWS(blow_up(A, 0));
}

TEST_CASE("shrink") {
  SymbolicMatrix K = tutte_k3(P);
  CHECK(is_zero_matrix(shrink(K, Substitution{{Gf(0, P), Gf(0, P), Gf(0, P)}})));
  SymbolicMatrix E = make_symbolic(2, 2, P, {unit(2, 2, 0, 0, 1, P)});
  MatF e = shrink(E, Substitution{{Gf(1, P)}});
  CHECK(e == unit(2, 2, 0, 0, 1, P));
  Rng rng(2);
  for (int it = 0; it < 20; ++it) CHECK(rank(shrink(K, random_substitution(3, P, rng))) == 2);
  CHECK_THROWS_AS(shrink(K, Substitution{{Gf(1, P)}}), MissingSymbol);
  CHECK(is_skew_symmetric(K));
}

TEST_CASE("block-scalar substitution multiplies rank by d") {
  Rng rng(3);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + static_cast<int>(rng.uniform(0, 3));
    int m = 1 + static_cast<int>(rng.uniform(0, 2));
    SymbolicMatrix A = random_symbolic(rng, n, m, 7, 0.3);
    int d = 1 + static_cast<int>(rng.uniform(0, 2));
    Substitution s = random_substitution(m, 7, rng);
    Substitution sb;
    for (int k = 0; k < m; ++k)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) sb.values.push_back(a == b ? s.values[static_cast<std::size_t>(k)] : Gf(0, 7));
    REQUIRE(rank(shrink(blow_up(A, d), sb)) == d * rank(shrink(A, s)));
  }
}

TEST_CASE("shrink commutes with submatrix selection") {
  Rng rng(4);
  for (int it = 0; it < 30; ++it) {
    SymbolicMatrix A = random_symbolic(rng, 4, 3, P, 0.5);
    Substitution s = random_substitution(3, P, rng);
    std::vector<int> I{0, 2}, J{1, 2, 3};
    MatF full = shrink(A, s);
    MatF sub = shrink(submatrix(A, I, J), s);
    for (std::size_t i = 0; i < I.size(); ++i)
      for (std::size_t j = 0; j < J.size(); ++j)
        REQUIRE(sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == full(I[i], J[j]));
  }
}

TEST_CASE("weighted shrink carries t powers") {
  WeightedSymbolicMatrix Ac{make_symbolic(1, 1, P, {unit(1, 1, 0, 0, 2, P), unit(1, 1, 0, 0, 1, P)}), {3, -1}};
  RationalMatrix R = shrink(Ac, Substitution{{Gf(1, P), Gf(5, P)}});
  CHECK(R(0, 0) == RatFn::monomial(Gf(2, P), 3) + RatFn::monomial(Gf(5, P), -1));
}

TEST_CASE("delta oracle examples") {
  Rng rng(5);
  WeightedSymbolicMatrix Kb{complete_bipartite(2, P), {3, 1, 2, 4}};
  CHECK(delta_ell_oracle(Kb, 0, 3, rng) == Degree(0));
  CHECK(delta_ell_oracle(Kb, 1, 3, rng) == Degree(4));
  CHECK(delta_ell_oracle(Kb, 2, 3, rng) == Degree(7));
  WeightedSymbolicMatrix K3{tutte_k3(P), {1, 1, 1}};
  CHECK(delta_ell_oracle(K3, 3, 3, rng).is_neg_inf());
  CHECK(delta_ell_oracle(K3, 2, 3, rng) == Degree(2));
  CHECK_THROWS_AS(delta_ell_oracle(K3, 4, 3, rng), BadCardinality);
  CHECK_THROWS_AS(delta_ell_oracle(K3, -1, 3, rng), BadCardinality);
}

TEST_CASE("Delta blow-up oracle examples") {
  Rng rng(6);
  WeightedSymbolicMatrix K3{tutte_k3(P), {1, 1, 1}};
  CHECK(Delta_blowup_oracle(K3, 3, 3, rng) == Degree(3));
  CHECK(Delta_blowup_oracle(K3, 1, 3, rng) == Degree(1));
  WeightedSymbolicMatrix Z{zero_symbolic(2, 2, P), {}};
  CHECK(Delta_blowup_oracle(Z, 1, 3, rng).is_neg_inf());
  WeightedSymbolicMatrix Kb{complete_bipartite(2, P), {3, 1, 2, 4}};
  CHECK(Delta_blowup_oracle(Kb, 1, 3, rng) == Degree(4));
  // small prime goes through the extension field
  WeightedSymbolicMatrix K3two{tutte_k3(2), {1, 1, 1}};
  CHECK(Delta_blowup_oracle(K3two, 3, 3, rng) == Degree(3));
}

TEST_CASE("oracles are deterministic given the seed") {
  Rng r1(9), r2(9);
  Rng g(10);
  WeightedSymbolicMatrix A{random_symbolic(g, 4, 3, 3, 0.4), {2, -1, 0}};
  for (int l = 0; l <= 4; ++l) CHECK(Delta_blowup_oracle(A, l, 2, r1) == Delta_blowup_oracle(A, l, 2, r2));
}

TEST_CASE("delta_ell <= Delta_ell on random instances") {
  Rng rng(12);
  for (int it = 0; it < 15; ++it) {
    int n = 2 + static_cast<int>(rng.uniform(0, 2));
    std::uint32_t p = it % 2 ? 2 : P;
    SymbolicMatrix A = random_symbolic(rng, n, 3, p, 0.4);
    std::vector<long long> c;
    for (int k = 0; k < 3; ++k) c.push_back(rng.uniform(-3, 3));
    WeightedSymbolicMatrix Ac{A, c};
    for (int l = 0; l <= n; ++l) REQUIRE(delta_ell_oracle(Ac, l, 3, rng) <= Delta_blowup_oracle(Ac, l, 3, rng));
  }
}

TEST_CASE("oracle size cap") {
  Rng rng(13);
  WeightedSymbolicMatrix big{zero_symbolic(9, 9, P), {}};
  CHECK_THROWS_AS(delta_ell_oracle(big, 1, 1, rng), CapExceeded);
}

TEST_CASE("blowup rank sample") {
  Rng rng(14);
  CHECK(blowup_rank_sample(tutte_k3(P), 2, 3, rng) == 6);
  CHECK(blowup_rank_sample(tutte_k3(2), 2, 3, rng) == 6);
  CHECK(blowup_rank_sample(zero_symbolic(3, 3, P), 2, 3, rng) == 0);
}
