#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdeg/mvsp.hpp"
#include "ncdeg/ratfunc.hpp"
#include "ncdeg/symbolic.hpp"

namespace ncdeg {

struct NotSorted : std::invalid_argument {
  explicit NotSorted(const std::string& m) : std::invalid_argument(m) {}
};
struct NotComplementarySlack : std::domain_error {
  explicit NotComplementarySlack(const std::string& m) : std::domain_error(m) {}
};
struct NotSkewSymmetric : std::invalid_argument {
  explicit NotSkewSymmetric(const std::string& m) : std::invalid_argument(m) {}
};
struct Infeasible : std::domain_error {
  explicit Infeasible(const std::string& m) : std::domain_error(m) {}
};

enum class DualMode { General, Monomial, Symmetric };
std::string mode_name(DualMode m);

// general:   deg((t^alpha) P B_k Q (t^beta))_ij <= 0, P and Q biproper
// monomial:  alpha_i + beta_j + c_k <= 0 whenever (P A_k Q)_ij != 0
// symmetric: monomial with beta = alpha and Q = P^T; alpha half-integral
struct DualSolution {
  DualMode mode = DualMode::Monomial;
  std::vector<Rational> alpha, beta;
  MatF P, Q;
  RationalMatrix Pr, Qr;

  int n() const { return static_cast<int>(alpha.size()); }
  // -sum_{i>n-l} alpha_i - sum_{j>n-l} beta_j
  Rational objective(int ell) const;
};

struct DegreeProfile {
  int n = 0;
  std::vector<Degree> values;                      // l = 0..n
  std::vector<std::optional<DualSolution>> duals;  // certificate for each finite value
  long iterations = 0;
  bool dominant = true;     // every witness came from a dominant solver
  int kappa2_violations = 0;  // rank stayed flat after a step with kappa < kappa2
  std::vector<int> rank_trace;
  std::vector<DualSolution> trace;  // every intermediate dual, when requested

  Degree max() const;
};

struct StepSizes {
  std::optional<Rational> kappa1, kappa2;  // nullopt is +inf
  std::optional<Rational> kappa() const;
};

struct AlgoOptions {
  SolverKind solver = SolverKind::Auto;
  bool dominant = true;
  bool record_trace = false;
  long max_iterations = 1000000;
};

// Algorithm Deg-Det. Returns deg Det B, -inf when B is nc-singular.
struct DegDetResult {
  Degree value;
  long iterations = 0;
  std::optional<DualSolution> dual;
};
DegDetResult deg_det(const RationalSymbolicMatrix& B, const AlgoOptions& opt = {});

// Algorithm Deg-SubDet: every Delta_l(B) with general-mode duals.
DegreeProfile deg_subdet(const RationalSymbolicMatrix& B, const AlgoOptions& opt = {});

// One left/right renormalization of a general dual against witness (S, T, r, s)
// and step kappa: raises rows spanning U and lowers columns outside V.
DualSolution renormalize(const DualSolution& sol, const FRWitness& w, long long kappa);

// Hungarian Deg-Det on A[c] with field-valued duals.
DegreeProfile hungarian_deg_det(const WeightedSymbolicMatrix& Ac, const AlgoOptions& opt = {});

StepSizes step_sizes(const DualSolution& sol, const std::vector<int>& X, const std::vector<int>& Y,
                     const WeightedSymbolicMatrix& Ac);

// Symmetric variant for skew-symmetric A; alpha half-integral.
DegreeProfile symmetric_hungarian(const WeightedSymbolicMatrix& Ac, const AlgoOptions& opt = {});

struct MvmpForm {
  std::vector<Rational> xi, eta;
  Rational gamma;
  std::vector<Subspace> U_flag, V_flag;  // U_i spanned by the first i rows of P, V_j by first j columns of Q
  Rational objective;                     // sum xi + sum eta - l gamma
};
MvmpForm dual_forms_convert(const DualSolution& sol, int ell);
// Lowers alpha_1..alpha_{n-l} (and beta) to alpha_{n-l+1}; keeps feasibility and the l-objective.
DualSolution flatten_head(const DualSolution& sol, int ell);
bool mvmp_feasible(const MvmpForm& f, const DualSolution& sol, const WeightedSymbolicMatrix& Ac);

// Integral u with 1^T u = l and c^T u = Delta_l(A[c]).
std::vector<long long> optimize_Q(const WeightedSymbolicMatrix& Ac, int ell, const AlgoOptions& opt = {});

// Certificate checks. Empty string on success, else the first violation.
std::string check_dual(const WeightedSymbolicMatrix& Ac, const DualSolution& sol);
std::string check_dual(const RationalSymbolicMatrix& B, const DualSolution& sol);
std::string check_profile(const WeightedSymbolicMatrix& Ac, const DegreeProfile& prof);
std::string check_profile(const RationalSymbolicMatrix& B, const DegreeProfile& prof);
bool is_concave(const std::vector<Degree>& values);

}  // namespace ncdeg
