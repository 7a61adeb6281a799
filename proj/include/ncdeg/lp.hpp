#pragma once

#include <vector>

#include "ncdeg/scalar.hpp"

namespace ncdeg {

// max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0, in exact arithmetic.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

using RatRows = std::vector<std::vector<Rational>>;

// Two-phase simplex with Bland's rule, so it cannot cycle.
LpResult lp_maximize(const std::vector<Rational>& c, const RatRows& A_ub, const std::vector<Rational>& b_ub,
                     const RatRows& A_eq = {}, const std::vector<Rational>& b_eq = {});

}  // namespace ncdeg
