#include "ncdeg/assignment.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>

namespace ncdeg {

namespace {

bool augment(const WeightGrid& w, int u, std::vector<int>& match_col, std::vector<char>& seen) {
  for (std::size_t v = 0; v < w[static_cast<std::size_t>(u)].size(); ++v) {
    if (!w[static_cast<std::size_t>(u)][v] || seen[v]) continue;
    seen[v] = 1;
    if (match_col[v] < 0 || augment(w, match_col[v], match_col, seen)) {
      match_col[v] = u;
      return true;
    }
  }
  return false;
}

// Hungarian algorithm (potentials), minimum cost assignment on a dense
// square cost matrix.
long long hungarian_min(const std::vector<std::vector<long long>>& a, std::vector<int>& row_to_col,
                        std::vector<long long>* pu = nullptr, std::vector<long long>* pv = nullptr) {
  int n = static_cast<int>(a.size());
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(static_cast<std::size_t>(n + 1)), v(static_cast<std::size_t>(n + 1));
  std::vector<int> p(static_cast<std::size_t>(n + 1)), way(static_cast<std::size_t>(n + 1));
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long long> minv(static_cast<std::size_t>(n + 1), INF);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      int i0 = p[static_cast<std::size_t>(j0)], j1 = 0;
      long long delta = INF;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        long long cur = a[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                        u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }
  row_to_col.assign(static_cast<std::size_t>(n), -1);
  if (pu) pu->assign(u.begin() + 1, u.end());
  if (pv) pv->assign(v.begin() + 1, v.end());
  long long cost = 0;
  for (int j = 1; j <= n; ++j) {
    row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    cost += a[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)][static_cast<std::size_t>(j - 1)];
  }
  return cost;
}

std::optional<long long> solve(const WeightGrid& w, std::vector<int>* match, int sign,
                               std::vector<long long>* pu = nullptr, std::vector<long long>* pv = nullptr) {
  std::size_t n = w.size();
  if (n == 0) {
    if (match) match->clear();
    return 0;
  }
  if (max_matching_size(w) < static_cast<int>(n)) return std::nullopt;
  long long maxabs = 0;
  for (auto& row : w)
    for (auto& x : row)
      if (x) maxabs = std::max(maxabs, std::llabs(*x));
  long long big = 2 * static_cast<long long>(n) * (maxabs + 1) + 1;
  std::vector<std::vector<long long>> cost(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = w[i][j] ? -sign * *w[i][j] : big;
  std::vector<int> r2c;
  hungarian_min(cost, r2c, pu, pv);
  long long total = 0;
  for (std::size_t i = 0; i < n; ++i) total += *w[i][static_cast<std::size_t>(r2c[i])];
  if (match) *match = r2c;
  return total;
}

}  // namespace

int max_matching_size(const WeightGrid& w) {
  std::size_t cols = 0;
  for (auto& row : w) cols = std::max(cols, row.size());
  std::vector<int> match_col(cols, -1);
  int size = 0;
  for (std::size_t u = 0; u < w.size(); ++u) {
    std::vector<char> seen(cols, 0);
    if (augment(w, static_cast<int>(u), match_col, seen)) ++size;
  }
  return size;
}

std::optional<long long> max_weight_perfect_matching(const WeightGrid& w, std::vector<int>* match) {
  return solve(w, match, +1);
}

std::optional<long long> max_weight_perfect_matching(const WeightGrid& w, std::vector<long long>& row_pot,
                                                     std::vector<long long>& col_pot) {
  std::vector<long long> u, v;
  auto r = solve(w, nullptr, +1, &u, &v);
  if (!r) return r;
  // costs were negated weights
  row_pot.resize(u.size());
  col_pot.resize(v.size());
  for (std::size_t i = 0; i < u.size(); ++i) row_pot[i] = -u[i];
  for (std::size_t j = 0; j < v.size(); ++j) col_pot[j] = -v[j];
  return r;
}

std::optional<long long> min_weight_perfect_matching(const WeightGrid& w, std::vector<int>* match) {
  auto r = solve(w, match, -1);
  return r;
}

}  // namespace ncdeg
