#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ncdeg/scalar.hpp"

namespace ncdeg {

struct Singular : std::domain_error {
  Singular() : std::domain_error("matrix is singular") {}
};

template <typename F>
bool is_zero_matrix(const Mat<F>& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!is_zero(M(i, j))) return false;
  return true;
}

template <typename F>
Mat<F> zeros(Eigen::Index r, Eigen::Index c) {
  return Mat<F>::Constant(r, c, F(0));
}

template <typename F>
Mat<F> identity(Eigen::Index n) {
  Mat<F> I = zeros<F>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) I(i, i) = F(1);
  return I;
}

// Product written out so that no accumulator starts from an unbound zero
// when the operands carry a field context.
template <typename F>
Mat<F> mul(const Mat<F>& A, const Mat<F>& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("mul: shape mismatch");
  Mat<F> C = zeros<F>(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      if (is_zero(A(i, k))) continue;
      for (Eigen::Index j = 0; j < B.cols(); ++j)
        if (!is_zero(B(k, j))) C(i, j) += A(i, k) * B(k, j);
    }
  return C;
}

template <typename F>
Mat<F> transpose(const Mat<F>& A) {
  return A.transpose();
}

// Reduced row echelon form in place; returns pivot columns in order.
template <typename F>
std::vector<int> rref_inplace(Mat<F>& M) {
  std::vector<int> piv;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < M.cols() && r < M.rows(); ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = r; i < M.rows(); ++i)
      if (!is_zero(M(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) M.row(sel).swap(M.row(r));
    F iv = inv(M(r, c));
    for (Eigen::Index j = c; j < M.cols(); ++j) M(r, j) = M(r, j) * iv;
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      if (i == r || is_zero(M(i, c))) continue;
      F f = M(i, c);
      for (Eigen::Index j = c; j < M.cols(); ++j)
        if (!is_zero(M(r, j))) M(i, j) = M(i, j) - f * M(r, j);
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  return piv;
}

template <typename F>
Mat<F> rref(Mat<F> M, std::vector<int>* pivots = nullptr) {
  auto piv = rref_inplace(M);
  M.conservativeResize(static_cast<Eigen::Index>(piv.size()), M.cols());
  if (pivots) *pivots = piv;
  return M;
}

template <typename F>
int rank(Mat<F> M) {
  int r = 0;
  Eigen::Index rows = M.rows(), cols = M.cols();
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(M(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) M.row(sel).swap(M.row(r));
    F iv = inv(M(r, c));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (is_zero(M(i, c))) continue;
      F f = M(i, c) * iv;
      for (Eigen::Index j = c + 1; j < cols; ++j)
        if (!is_zero(M(r, j))) M(i, j) = M(i, j) - f * M(r, j);
    }
    ++r;
  }
  return r;
}

template <typename F>
F det(Mat<F> M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("det: not square");
  Eigen::Index n = M.rows();
  F d = F(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (!is_zero(M(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) return M(c, c) * F(0);
    if (sel != c) {
      M.row(sel).swap(M.row(c));
      d = -d;
    }
    d = d * M(c, c);
    F iv = inv(M(c, c));
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(M(i, c))) continue;
      F f = M(i, c) * iv;
      for (Eigen::Index j = c + 1; j < n; ++j)
        if (!is_zero(M(c, j))) M(i, j) = M(i, j) - f * M(c, j);
    }
  }
  return d;
}

template <typename F>
Mat<F> inverse(const Mat<F>& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse: not square");
  Eigen::Index n = M.rows();
  Mat<F> A(n, 2 * n);
  A.leftCols(n) = M;
  A.rightCols(n) = identity<F>(n);
  auto piv = rref_inplace(A);
  if (static_cast<Eigen::Index>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1) throw Singular();
  return A.rightCols(n);
}

// Basis (as rows) of the right kernel {v : M v = 0}.
template <typename F>
Mat<F> nullspace(const Mat<F>& M) {
  std::vector<int> piv;
  Mat<F> R = rref(M, &piv);
  Eigen::Index n = M.cols();
  std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
  for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
  Eigen::Index k = n - static_cast<Eigen::Index>(piv.size());
  Mat<F> N = zeros<F>(k, n);
  Eigen::Index row = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_piv[static_cast<std::size_t>(f)]) continue;
    N(row, f) = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) N(row, piv[i]) = -R(static_cast<Eigen::Index>(i), f);
    ++row;
  }
  return N;
}

// Extend the rows of B (independent) to a basis of F^n; returns n x n.
template <typename F>
Mat<F> complete_basis(const Mat<F>& B, Eigen::Index n) {
  Mat<F> out = zeros<F>(n, n);
  Eigen::Index k = B.rows();
  if (k) out.topRows(k) = B;
  Mat<F> cur = B;
  Eigen::Index filled = k;
  for (Eigen::Index e = 0; e < n && filled < n; ++e) {
    Mat<F> trial(filled + 1, n);
    if (filled) trial.topRows(filled) = out.topRows(filled);
    trial.row(filled) = zeros<F>(1, n);
    trial(filled, e) = F(1);
    if (rank(trial) == filled + 1) {
      out.row(filled) = trial.row(filled);
      ++filled;
    }
  }
  return out;
}

template <typename F>
Mat<F> permutation_matrix(const std::vector<int>& perm) {
  // row i has its 1 in column perm[i]
  Eigen::Index n = static_cast<Eigen::Index>(perm.size());
  Mat<F> P = zeros<F>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) P(i, perm[static_cast<std::size_t>(i)]) = F(1);
  return P;
}

}  // namespace ncdeg
