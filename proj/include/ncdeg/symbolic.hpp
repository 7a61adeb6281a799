#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdeg/degree.hpp"
#include "ncdeg/ratfunc.hpp"
#include "ncdeg/scalar.hpp"

namespace ncdeg {

struct MissingSymbol : std::invalid_argument {
  explicit MissingSymbol(const std::string& m) : std::invalid_argument(m) {}
};
struct BadCardinality : std::invalid_argument {
  explicit BadCardinality(const std::string& m) : std::invalid_argument(m) {}
};
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& m) : std::runtime_error(m) {}
};

// A = sum_k A_k x_k over GF(p).
struct SymbolicMatrix {
  int rows = 0;
  int cols = 0;
  std::uint32_t p = 0;
  std::vector<MatF> terms;

  int m() const { return static_cast<int>(terms.size()); }
  void validate() const;
};

// A[c] = sum_k A_k t^{c_k} x_k.
struct WeightedSymbolicMatrix {
  SymbolicMatrix base;
  std::vector<long long> c;

  int n() const { return base.rows; }
  void validate() const;
};

// B = sum_k B_k x_k with B_k over GF(p)(t).
struct RationalSymbolicMatrix {
  int n = 0;
  std::uint32_t p = 0;
  std::vector<RationalMatrix> terms;

  int m() const { return static_cast<int>(terms.size()); }
  void validate() const;
  Degree d() const;   // max entry degree over all terms
  Degree d0() const;  // min mindeg over nonzero entries
};

struct Substitution {
  std::vector<Gf> values;  // one value per symbol index
};

SymbolicMatrix make_symbolic(int rows, int cols, std::uint32_t p, std::vector<MatF> terms);
SymbolicMatrix zero_symbolic(int rows, int cols, std::uint32_t p);
SymbolicMatrix pad_square(const SymbolicMatrix& A);
WeightedSymbolicMatrix pad_square(const WeightedSymbolicMatrix& A);
SymbolicMatrix submatrix(const SymbolicMatrix& A, const std::vector<int>& I, const std::vector<int>& J);
RationalSymbolicMatrix to_rational_symbolic(const WeightedSymbolicMatrix& Ac);
RationalSymbolicMatrix to_rational_symbolic(const SymbolicMatrix& A);
bool is_skew_symmetric(const SymbolicMatrix& A);

// Symbol (k, i, j) of the blow-up has index k*d*d + i*d + j.
SymbolicMatrix blow_up(const SymbolicMatrix& A, int d);
MatF shrink(const SymbolicMatrix& A, const Substitution& s);
RationalMatrix shrink(const WeightedSymbolicMatrix& Ac, const Substitution& s);
Substitution random_substitution(int symbols, std::uint32_t p, Rng& rng);

// Largest rank of sum_k A_k (x) X_k over `trials` random d x d blocks X_k,
// sampled from an extension of GF(p) when p is small.
int blowup_rank_sample(const SymbolicMatrix& A, int d, int trials, Rng& rng);

// Monte-Carlo estimators; never exceed the true value.
Degree delta_ell_oracle(const WeightedSymbolicMatrix& Ac, int ell, int trials, Rng& rng);
Degree Delta_blowup_oracle(const WeightedSymbolicMatrix& Ac, int ell, int trials, Rng& rng);

constexpr int kDefaultTrials = 3;
constexpr int kOracleMaxN = 8;

}  // namespace ncdeg
