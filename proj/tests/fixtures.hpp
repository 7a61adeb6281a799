#pragma once

// Small instance generators shared by the unit tests.

#include <utility>
#include <vector>

#include "ncdeg/symbolic.hpp"

namespace fx {

using namespace ncdeg;

inline MatF unit(int r, int c, int i, int j, long long v, std::uint32_t p) {
  MatF M = MatF::Constant(r, c, Gf(0, p));
  M(i, j) = Gf(v, p);
  return M;
}

inline SymbolicMatrix tutte(int n, const std::vector<std::pair<int, int>>& edges, std::uint32_t p) {
  std::vector<MatF> terms;
  for (auto [i, j] : edges) {
    MatF M = unit(n, n, i, j, 1, p);
    M(j, i) = Gf(-1, p);
    terms.push_back(M);
  }
  return make_symbolic(n, n, p, terms);
}

inline SymbolicMatrix tutte_k3(std::uint32_t p) { return tutte(3, {{0, 1}, {0, 2}, {1, 2}}, p); }

inline SymbolicMatrix edmonds(int n, const std::vector<std::pair<int, int>>& edges, std::uint32_t p) {
  std::vector<MatF> terms;
  for (auto [i, j] : edges) terms.push_back(unit(n, n, i, j, 1, p));
  return make_symbolic(n, n, p, terms);
}

inline std::vector<std::pair<int, int>> random_edges(Rng& rng, int n, double density) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.unit() < density) e.emplace_back(i, j);
  return e;
}

inline SymbolicMatrix random_symbolic(Rng& rng, int n, int m, std::uint32_t p, double density) {
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

inline MatF random_matrix(Rng& rng, int r, int c, std::uint32_t p) {
  MatF M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = random_elem(rng, p);
  return M;
}

// sum_k a_k b_k^T x_k from the rows of Am, Bm
inline SymbolicMatrix rank_one_sum(const MatF& Am, const MatF& Bm, std::uint32_t p) {
  std::vector<MatF> terms;
  for (Eigen::Index k = 0; k < Am.rows(); ++k) {
    MatF T(Am.cols(), Bm.cols());
    for (Eigen::Index i = 0; i < Am.cols(); ++i)
      for (Eigen::Index j = 0; j < Bm.cols(); ++j) T(i, j) = Am(k, i) * Bm(k, j);
    terms.push_back(T);
  }
  return make_symbolic(static_cast<int>(Am.cols()), static_cast<int>(Bm.cols()), p, terms);
}

// skew terms a b^T - b a^T
inline SymbolicMatrix lines_matrix(const MatF& Am, const MatF& Bm, std::uint32_t p) {
  std::vector<MatF> terms;
  int n = static_cast<int>(Am.cols());
  for (Eigen::Index k = 0; k < Am.rows(); ++k) {
    MatF T(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) T(i, j) = Am(k, i) * Bm(k, j) - Bm(k, i) * Am(k, j);
    terms.push_back(T);
  }
  return make_symbolic(n, n, p, terms);
}

}  // namespace fx
