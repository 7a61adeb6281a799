#include "ncdeg/lp.hpp"

#include <stdexcept>

namespace ncdeg {

namespace {

struct Tableau {
  std::vector<std::vector<Rational>> t;  // constraint rows, last column is the rhs
  std::vector<int> basis;
  int cols = 0;  // variable columns

  Rational& rhs(std::size_t i) { return t[i][static_cast<std::size_t>(cols)]; }

  void pivot(std::size_t r, int c) {
    auto& pr = t[r];
    Rational inv = 1 / pr[static_cast<std::size_t>(c)];
    for (auto& x : pr) x *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r) continue;
      Rational f = t[i][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < pr.size(); ++j)
        if (pr[j] != 0) t[i][j] -= f * pr[j];
    }
    basis[r] = c;
  }

  // maximize obj over columns allowed[j]; false when unbounded
  bool optimize(const std::vector<Rational>& obj, const std::vector<char>& allowed) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (!allowed[static_cast<std::size_t>(j)]) continue;
        Rational red = obj[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < t.size(); ++i)
          if (t[i][static_cast<std::size_t>(j)] != 0) red -= obj[static_cast<std::size_t>(basis[i])] * t[i][static_cast<std::size_t>(j)];
        if (red > 0) enter = j;
      }
      if (enter < 0) return true;
      std::size_t leave = t.size();
      Rational best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const Rational& a = t[i][static_cast<std::size_t>(enter)];
        if (a <= 0) continue;
        Rational ratio = rhs(i) / a;
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<Rational>& c, const RatRows& A_ub, const std::vector<Rational>& b_ub,
                     const RatRows& A_eq, const std::vector<Rational>& b_eq) {
  if (A_ub.size() != b_ub.size() || A_eq.size() != b_eq.size()) throw std::invalid_argument("lp: row count mismatch");
  const int n = static_cast<int>(c.size());
  const int mu = static_cast<int>(A_ub.size()), me = static_cast<int>(A_eq.size());
  for (const auto& r : A_ub)
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("lp: ragged constraint row");
  for (const auto& r : A_eq)
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("lp: ragged constraint row");

  // artificials for rows whose slack cannot start in the basis
  int na = me;
  for (int i = 0; i < mu; ++i)
    if (b_ub[static_cast<std::size_t>(i)] < 0) ++na;
  Tableau T;
  T.cols = n + mu + na;
  int next_art = n + mu;
  auto add_row = [&](const std::vector<Rational>& a, Rational b, int slack) {
    std::vector<Rational> row(static_cast<std::size_t>(T.cols + 1));
    Rational sg = b < 0 ? Rational(-1) : Rational(1);
    for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = sg * a[static_cast<std::size_t>(j)];
    if (slack >= 0) row[static_cast<std::size_t>(slack)] = sg;
    row[static_cast<std::size_t>(T.cols)] = sg * b;
    int bas = slack;
    if (slack < 0 || sg < 0) {
      bas = next_art++;
      row[static_cast<std::size_t>(bas)] = 1;
    }
    T.t.push_back(std::move(row));
    T.basis.push_back(bas);
  };
  for (int i = 0; i < mu; ++i) add_row(A_ub[static_cast<std::size_t>(i)], b_ub[static_cast<std::size_t>(i)], n + i);
  for (int i = 0; i < me; ++i) add_row(A_eq[static_cast<std::size_t>(i)], b_eq[static_cast<std::size_t>(i)], -1);

  LpResult res;
  std::vector<char> all(static_cast<std::size_t>(T.cols), 1);
  if (na > 0) {
    std::vector<Rational> phase1(static_cast<std::size_t>(T.cols));
    for (int j = n + mu; j < T.cols; ++j) phase1[static_cast<std::size_t>(j)] = -1;
    T.optimize(phase1, all);
    for (std::size_t i = 0; i < T.t.size(); ++i)
      if (T.basis[i] >= n + mu && T.rhs(i) != 0) {
        res.status = LpResult::Status::Infeasible;
        return res;
      }
    // drive zero-level artificials out of the basis where possible
    for (std::size_t i = 0; i < T.t.size(); ++i) {
      if (T.basis[i] < n + mu) continue;
      for (int j = 0; j < n + mu; ++j)
        if (T.t[i][static_cast<std::size_t>(j)] != 0) {
          T.pivot(i, j);
          break;
        }
    }
    for (int j = n + mu; j < T.cols; ++j) all[static_cast<std::size_t>(j)] = 0;
  }
  std::vector<Rational> obj(static_cast<std::size_t>(T.cols));
  for (int j = 0; j < n; ++j) obj[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
  if (!T.optimize(obj, all)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.x.assign(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < T.t.size(); ++i)
    if (T.basis[i] < n) res.x[static_cast<std::size_t>(T.basis[i])] = T.rhs(i);
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += c[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
  return res;
}

}  // namespace ncdeg
