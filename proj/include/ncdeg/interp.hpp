#pragma once

#include <stdexcept>
#include <vector>

#include "ncdeg/degree.hpp"

namespace ncdeg {

template <typename F>
F fpow(F x, long long e) {
  if (e < 0) return fpow(inv(x), -e);
  F r = x * F(0) + F(1);
  while (e) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

// Degree of the polynomial g of degree <= n-1 through (x_i, y_i), i < n,
// read off the Newton divided differences. -inf if g = 0.
template <typename F>
Degree interpolated_degree(const std::vector<F>& x, std::vector<F> y) {
  std::size_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("interpolated_degree: size mismatch");
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      y[i] = (y[i] - y[i - 1]) / (x[i] - x[i - j]);
      if (i == j) break;
    }
  for (std::size_t i = n; i-- > 0;)
    if (!is_zero(y[i])) return Degree(static_cast<long long>(i));
  return Degree::neg_inf();
}

// deg det M(t) for a Laurent polynomial matrix known to satisfy
// lo <= val det, deg det <= hi. det_at(tau) returns det M(tau).
template <typename F, typename DetAt>
Degree degdet_from_points(long long lo, long long hi, const std::vector<F>& pts, DetAt det_at) {
  if (hi < lo) return Degree::neg_inf();
  std::size_t need = static_cast<std::size_t>(hi - lo + 1);
  if (pts.size() < need) throw std::invalid_argument("degdet_from_points: not enough evaluation points");
  std::vector<F> xs(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(need));
  std::vector<F> ys(need);
  for (std::size_t i = 0; i < need; ++i) ys[i] = det_at(xs[i]) * fpow(xs[i], -lo);
  Degree d = interpolated_degree(xs, ys);
  if (d.is_neg_inf()) return d;
  return Degree(lo + d.value());
}

}  // namespace ncdeg
