#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncdeg/symbolic.hpp"

namespace ncdeg {

struct EnumerationCapExceeded : std::runtime_error {
  explicit EnumerationCapExceeded(const std::string& m) : std::runtime_error(m) {}
};
struct WitnessUnavailable : std::runtime_error {
  explicit WitnessUnavailable(const std::string& m) : std::runtime_error(m) {}
};
struct PartitionMismatch : std::invalid_argument {
  explicit PartitionMismatch(const std::string& m) : std::invalid_argument(m) {}
};

// Row space in reduced echelon form, so equality is structural.
struct Subspace {
  int ambient = 0;
  std::uint32_t p = 0;
  MatF basis;  // dim x ambient

  int dim() const { return static_cast<int>(basis.rows()); }
  bool contains(const Subspace& o) const;
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.ambient == b.ambient && a.basis == b.basis; }
};

Subspace span_rows(const MatF& rows, int ambient, std::uint32_t p);
Subspace full_space(int n, std::uint32_t p);
Subspace zero_space(int n, std::uint32_t p);
Subspace annihilator(const Subspace& W);  // {v : w . v = 0 for all w in W}

// u^T A_k v = 0 for u in U, v in V. With S rows = basis(U) then completion and
// T columns = basis(V) then completion, (S A_k T)[0..r, 0..s] = 0.
struct FRWitness {
  MatF S, T;
  int r = 0, s = 0;
  Subspace U, V;
  bool dominant = false;

  int value(int rows, int cols) const { return rows + cols - r - s; }
};

FRWitness witness_from_subspaces(const Subspace& U, const Subspace& V, bool dominant);
bool verify_witness(const SymbolicMatrix& A, const FRWitness& w);

struct BruhatTriple {
  MatF L;               // lower triangular
  std::vector<int> pi;  // row i of the permutation matrix has its 1 at column pi[i]
  MatF U;               // unit upper triangular
  MatF pi_matrix() const;
};

BruhatTriple bruhat(const MatF& S);

int nc_rank(const SymbolicMatrix& A, Rng& rng, int trials = kDefaultTrials);

constexpr long kSubspaceCap = 5000;

long count_subspaces(int n, std::uint32_t p);
std::vector<Subspace> enumerate_subspaces(int n, std::uint32_t p, long cap = kSubspaceCap);

FRWitness mvsp_exhaustive(const SymbolicMatrix& A, bool want_dominant, long cap = kSubspaceCap);

struct BipartiteGraph {
  int rows = 0, cols = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based
};
FRWitness mvsp_bipartite(const BipartiteGraph& G, std::uint32_t p);

// a_k, b_k as rows of Am, Bm (m x n). Also returns the minimizing index set.
FRWitness mvsp_matroid_intersection(const MatF& Am, const MatF& Bm, std::vector<int>* minimizer = nullptr);

// Maximum common independent set of the linear matroids on the rows of Am and Bm.
std::vector<int> matroid_intersection(const MatF& Am, const MatF& Bm, std::vector<int>* reach_sink = nullptr);

enum class SolverKind { Auto, Exhaustive, Bipartite, Matroid };
SolverKind parse_solver(const std::string& s);
std::string solver_name(SolverKind k);

// Structural class of A: single-entry terms, rank <= 1 terms, or general.
SolverKind classify(const SymbolicMatrix& A);
FRWitness solve_mvsp(const SymbolicMatrix& A, SolverKind kind = SolverKind::Auto, bool want_dominant = true);

// Witness normalized against ordered partitions (runs of equal dual values).
// S_pos is block diagonal with the rows spanning U placed first inside each
// block; X lists those row positions. Same for T_pos, Y on the column side.
struct PositionedWitness {
  FRWitness w;
  MatF S_pos, T_pos;
  std::vector<int> X, Y;
};

std::vector<std::pair<int, int>> runs_of(const std::vector<long long>& values);
PositionedWitness block_diagonalize_witness(const FRWitness& w, const std::vector<std::pair<int, int>>& row_blocks,
                                            const std::vector<std::pair<int, int>>& col_blocks);

}  // namespace ncdeg
