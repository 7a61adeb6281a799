// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "io.hpp"
#include "ncdeg/apps.hpp"
#include "ncdeg/linalg.hpp"

using namespace ncdeg;
using io::json;

namespace {

constexpr std::uint32_t kBig = 65521;

std::size_t uz(long long i) { return static_cast<std::size_t>(i); }

struct Case {
  std::string cls;  // bipartite, matroid, lines
  WeightedSymbolicMatrix Ac;
  DegreeProfile prof;
  std::optional<BipartiteInstance> bip;
  std::optional<MatroidPairInstance> mat;
  std::optional<LineCollection> lines;
};

std::vector<Case> g_cases;
int g_failed = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& what, const std::string& detail, double secs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " [" << detail << ", " << buf << "]"
            << std::endl;
  if (!ok) ++g_failed;
}

// counts problems, keeps the first for the report line
struct Problems {
  int count = 0;
  std::string first;
  void add(const std::string& s) {
    if (count++ == 0) first = s;
  }
  bool ok() const { return count == 0; }
  std::string str() const { return ok() ? "" : std::to_string(count) + " problem(s), first: " + first; }
};

MatF random_matrix(Rng& rng, int r, int c, std::uint32_t p) {
  MatF M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = random_elem(rng, p);
  return M;
}

MatF random_invertible(Rng& rng, int n, std::uint32_t p) {
  while (true) {
    MatF M = random_matrix(rng, n, n, p);
    if (rank(M) == n) return M;
  }
}

BipartiteInstance random_bipartite(Rng& rng) {
  BipartiteInstance g;
  g.n = int(rng.uniform(1, 6));
  while (g.edges.empty())
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (rng.unit() < 0.5) g.edges.emplace_back(i, j);
  for (std::size_t k = 0; k < g.edges.size(); ++k) g.weights.push_back(rng.uniform(-10, 10));
  return g;
}

MatroidPairInstance random_matroid(Rng& rng) {
  int n = int(rng.uniform(1, 5)), m = int(rng.uniform(1, 8));
  MatroidPairInstance mp{n, 5, random_matrix(rng, m, n, 5), random_matrix(rng, m, n, 5), {}};
  for (int k = 0; k < m; ++k) mp.weights.push_back(rng.uniform(-10, 10));
  return mp;
}

LineCollection random_lines(Rng& rng) {
  LineCollection H;
  H.p = rng.uniform(0, 1) ? 3 : 2;
  H.n = int(rng.uniform(2, 4));
  int m = int(rng.uniform(1, 5));
  H.a = MatF(m, H.n);
  H.b = MatF(m, H.n);
  for (int k = 0; k < m; ++k) {
    while (true) {
      MatF r = random_matrix(rng, 2, H.n, H.p);
      if (rank(r) < 2) continue;
      H.a.row(k) = r.row(0);
      H.b.row(k) = r.row(1);
      break;
    }
    H.weights.push_back(rng.uniform(-3, 3));
  }
  return H;
}

// 1. ---------------------------------------------------------------------

void c1() {
  auto t0 = std::chrono::steady_clock::now();
  GraphInstance k3{3, kBig, {{0, 1}, {0, 2}, {1, 2}}, {1, 1, 1}};
  SymbolicMatrix T = build_tutte(k3).base;
  Rng rng(1);
  // an odd skew matrix is singular, and a 2x2 minor is x12
  int r = 0;
  for (int t = 0; t < 5; ++t) r = std::max(r, rank(shrink(T, random_substitution(3, kBig, rng))));
  int nc = nc_rank(T, rng);
  double s = seconds_since(t0);
  report(1, r == 2 && nc == 3 && s < 1.0, "K3 Tutte rank 2, nc-rank 3 over GF(65521)",
         "rank " + std::to_string(r) + ", nc-rank " + std::to_string(nc), s);
}

// 2.-4. build the shared instance pool --------------------------------------

void c2() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(2002);
  Problems pr;
  for (int it = 0; it < 200; ++it) {
    Case c{"bipartite", {}, {}, random_bipartite(rng), {}, {}};
    c.Ac = build_edmonds(*c.bip);
    c.prof = hungarian_deg_det(c.Ac);
    for (int l = 0; l <= c.bip->n; ++l) {
      Degree want = brute_force_matching(*c.bip, l);
      if (c.prof.values[uz(l)] != want)
        pr.add("instance " + std::to_string(it) + " l=" + std::to_string(l) + ": " + c.prof.values[uz(l)].str() +
               " vs brute " + want.str());
    }
    g_cases.push_back(std::move(c));
  }
  double s = seconds_since(t0);
  report(2, pr.ok() && s < 60, "200 bipartite instances match brute-force l-matchings",
         pr.ok() ? "all equal" : pr.str(), s);
}

void c3() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(3003);
  Problems pr;
  for (int it = 0; it < 100; ++it) {
    Case c{"matroid", {}, {}, {}, random_matroid(rng), {}};
    c.Ac = build_matroid_intersection(*c.mat);
    c.prof = hungarian_deg_det(c.Ac);
    for (int l = 0; l <= c.mat->n; ++l) {
      Degree want = brute_force_matching(*c.mat, l);
      if (c.prof.values[uz(l)] != want)
        pr.add("instance " + std::to_string(it) + " l=" + std::to_string(l) + ": " + c.prof.values[uz(l)].str() +
               " vs brute " + want.str());
    }
    g_cases.push_back(std::move(c));
  }
  double s = seconds_since(t0);
  report(3, pr.ok() && s < 120, "100 matroid pairs over GF(5) match brute-force common independent sets",
         pr.ok() ? "all equal" : pr.str(), s);
}

void c4() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(4004);
  Problems pr;
  for (int it = 0; it < 100; ++it) {
    Case c{"lines", {}, {}, {}, {}, random_lines(rng)};
    c.Ac = build_matroid_matching(*c.lines);
    c.prof = symmetric_hungarian(c.Ac);
    for (int l = 0; l <= c.lines->n; ++l) {
      auto lp = fmp_lp_oracle(*c.lines, l);
      Degree want = lp ? Degree(-1) : Degree::neg_inf();
      if (lp) {
        Rational twice = 2 * lp->value;
        if (denominator(twice) != 1) {
          pr.add("instance " + std::to_string(it) + " l=" + std::to_string(l) + ": 2*LP = " + to_string(twice));
          continue;
        }
        want = Degree(static_cast<long long>(numerator(twice)));
      }
      if (c.prof.values[uz(l)] != want)
        pr.add("instance " + std::to_string(it) + " l=" + std::to_string(l) + ": " + c.prof.values[uz(l)].str() +
               " vs 2*LP " + want.str());
    }
    g_cases.push_back(std::move(c));
  }
  double s = seconds_since(t0);
  report(4, pr.ok() && s < 300, "100 line collections over GF(2)/GF(3): Delta_l = 2 * FMP LP",
         pr.ok() ? "all equal" : pr.str(), s);
}

// 5. ---------------------------------------------------------------------

void c5() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(5005);
  Problems above;
  long runs = 0, equal = 0;
  for (std::size_t i = 0; i < g_cases.size(); ++i) {
    const Case& c = g_cases[i];
    for (std::size_t l = 0; l < c.prof.values.size(); ++l) {
      Degree o = Delta_blowup_oracle(c.Ac, static_cast<int>(l), kDefaultTrials, rng);
      ++runs;
      if (o == c.prof.values[l]) ++equal;
      if (o > c.prof.values[l])
        above.add(c.cls + " #" + std::to_string(i) + " l=" + std::to_string(l) + ": oracle " + o.str() + " > " +
                  c.prof.values[l].str());
    }
  }
  double rate = runs ? double(equal) / double(runs) : 1.0;
  std::ostringstream d;
  d << equal << "/" << runs << " equal";
  if (!above.ok()) d << "; " << above.str();
  report(5, above.ok() && rate >= 0.99, "blow-up oracle never exceeds Delta_l, equality >= 99%", d.str(), seconds_since(t0));
}

// 6. ---------------------------------------------------------------------

io::Instance as_instance(const Case& c) {
  io::Instance inst;
  inst.matrix = c.Ac;
  inst.p = c.Ac.base.p;
  if (c.bip) {
    inst.kind = "bipartite";
    inst.bipartite = c.bip;
  } else if (c.mat) {
    inst.kind = "matroid-pair";
    inst.matroid_pair = c.mat;
  } else {
    inst.kind = "lines";
    inst.lines = c.lines;
  }
  return inst;
}

// text round trip so the check reads what the CLI would write
io::VerifyResult verify_via_text(json rep, const io::Instance& inst) {
  return io::verify_report(json::parse(rep.dump()), inst);
}

// feasible dual at random: random P, Q and sorted alpha, then beta pushed
// down to the tightest cap and made non-increasing by a running minimum
std::vector<long long> forced_beta(const std::vector<MatF>& PAQ, const std::vector<long long>& c,
                                   const std::vector<long long>& a, Rng& rng) {
  std::size_t n = a.size();
  std::vector<long long> b(n, rng.uniform(-15, 15));
  for (std::size_t k = 0; k < PAQ.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!PAQ[k](Eigen::Index(i), Eigen::Index(j)).is_zero()) b[j] = std::min(b[j], -a[i] - c[k]);
  for (std::size_t j = 1; j < n; ++j) b[j] = std::min(b[j], b[j - 1]);
  return b;
}

std::vector<long long> sorted_random(Rng& rng, int n, long long lo, long long hi) {
  std::vector<long long> a(uz(n));
  for (auto& x : a) x = rng.uniform(lo, hi);
  std::sort(a.rbegin(), a.rend());
  return a;
}

DualSolution random_monomial_dual(const WeightedSymbolicMatrix& Ac, Rng& rng) {
  int n = Ac.base.rows;
  DualSolution d;
  d.mode = DualMode::Monomial;
  d.P = random_invertible(rng, n, Ac.base.p);
  d.Q = random_invertible(rng, n, Ac.base.p);
  std::vector<MatF> PAQ;
  for (const MatF& T : Ac.base.terms) PAQ.push_back(mul(mul(d.P, T), d.Q));
  std::vector<long long> a = sorted_random(rng, n, -15, 15);
  std::vector<long long> b = forced_beta(PAQ, Ac.c, a, rng);
  for (int i = 0; i < n; ++i) {
    d.alpha.emplace_back(a[uz(i)]);
    d.beta.emplace_back(b[uz(i)]);
  }
  return d;
}

// constant P, Q are biproper, so a monomial dual doubles as a general one
DualSolution as_general(const DualSolution& m) {
  DualSolution g = m;
  g.mode = DualMode::General;
  g.Pr = to_rational(m.P);
  g.Qr = to_rational(m.Q);
  return g;
}

// doubled alpha, shifted down uniformly until every 2a_i + 2a_j + 2c_k <= 0
DualSolution random_symmetric_dual(const WeightedSymbolicMatrix& Ac, Rng& rng) {
  int n = Ac.base.rows;
  DualSolution d;
  d.mode = DualMode::Symmetric;
  d.P = random_invertible(rng, n, Ac.base.p);
  d.Q = transpose(d.P);
  std::vector<long long> a2 = sorted_random(rng, n, -30, 30);
  long long worst = std::numeric_limits<long long>::min();
  for (std::size_t k = 0; k < Ac.base.terms.size(); ++k) {
    MatF M = mul(mul(d.P, Ac.base.terms[k]), d.Q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!M(i, j).is_zero()) worst = std::max(worst, a2[uz(i)] + a2[uz(j)] + 2 * Ac.c[k]);
  }
  long long shift = worst > 0 ? (worst + 1) / 2 : 0;
  for (long long x : a2) d.alpha.emplace_back(x - shift, 2);
  d.beta = d.alpha;
  return d;
}

void c6() {
  auto t0 = std::chrono::steady_clock::now();
  Problems pr;
  long certs = 0;
  // emitted duals, through the JSON verifier
  for (std::size_t i = 0; i < g_cases.size(); ++i) {
    const Case& c = g_cases[i];
    io::Instance inst = as_instance(c);
    json rep = io::profile_to_json(c.prof, inst.p);
    if (c.lines) {
      rep["command"] = "fmm";
      FmmResult f = fmm_max_weight(*c.lines);
      json half = json::array();
      for (const auto& h : f.per_ell) half.push_back(h ? json(to_string(*h)) : json("-inf"));
      rep["half_values"] = half;
    } else {
      rep["command"] = "hungarian";
    }
    io::VerifyResult v = verify_via_text(rep, inst);
    certs += v.checked;
    if (!v.ok) pr.add(c.cls + " #" + std::to_string(i) + ": " + v.problems.front());
    if (!c.lines) {
      json g = io::profile_to_json(deg_subdet(to_rational_symbolic(c.Ac)), inst.p);
      g["command"] = "subdet";
      io::VerifyResult vg = verify_via_text(g, inst);
      certs += vg.checked;
      if (!vg.ok) pr.add(c.cls + " #" + std::to_string(i) + " subdet: " + vg.problems.front());
    }
  }
  // weak duality on random feasible duals
  std::map<std::string, std::vector<const Case*>> by;
  for (const Case& c : g_cases) by[c.cls].push_back(&c);
  by["general"] = by["bipartite"];
  Rng rng(6006);
  long weak = 0;
  for (auto& [cls, pool] : by) {
    for (int it = 0; it < 1000; ++it) {
      const Case& c = *pool[uz(rng.uniform(0, static_cast<long long>(pool.size()) - 1))];
      DualSolution d;
      std::string e;
      if (cls == "lines") {
        d = random_symmetric_dual(c.Ac, rng);
        e = check_dual(c.Ac, d);
      } else if (cls == "general") {
        d = as_general(random_monomial_dual(c.Ac, rng));
        e = check_dual(to_rational_symbolic(c.Ac), d);
      } else {
        d = random_monomial_dual(c.Ac, rng);
        e = check_dual(c.Ac, d);
      }
      if (!e.empty()) {
        pr.add(cls + " random dual rejected: " + e);
        continue;
      }
      for (std::size_t l = 0; l < c.prof.values.size(); ++l) {
        if (!c.prof.values[l].finite()) continue;
        ++weak;
        if (d.objective(static_cast<int>(l)) < Rational(c.prof.values[l].value()))
          pr.add(cls + " l=" + std::to_string(l) + ": dual objective " + to_string(d.objective(static_cast<int>(l))) +
                 " below Delta " + c.prof.values[l].str());
      }
    }
  }
  report(6, pr.ok(), "emitted duals verify; weak duality on 4 x 1000 random feasible duals",
         pr.ok() ? std::to_string(certs) + " certificates, " + std::to_string(weak) + " weak-duality checks" : pr.str(),
         seconds_since(t0));
}

// 7. ---------------------------------------------------------------------

int finite_top(const DegreeProfile& p) {
  int r = 0;
  for (std::size_t l = 0; l < p.values.size(); ++l)
    if (p.values[l].finite()) r = static_cast<int>(l);
  return r;
}

void c7() {
  auto t0 = std::chrono::steady_clock::now();
  Problems pr;
  long worst_sub = 0, worst_h = 0;
  // raw counts for anyone who wants to plot them
  std::ofstream csv("iterations.csv");
  csv << "class,index,n,rstar,d_minus_d0,subdet_iterations,hungarian_iterations\n";
  for (std::size_t i = 0; i < g_cases.size(); ++i) {
    const Case& c = g_cases[i];
    long long n = c.Ac.base.rows;
    long long rstar = finite_top(c.prof);
    if (c.prof.iterations > 4 * rstar * n * n)
      pr.add(c.cls + " #" + std::to_string(i) + ": hungarian " + std::to_string(c.prof.iterations) + " iterations > " +
             std::to_string(4 * rstar * n * n));
    worst_h = std::max(worst_h, c.prof.iterations);
    if (c.lines) {
      csv << c.cls << "," << i << "," << n << "," << rstar << ",," << "," << c.prof.iterations << "\n";
      continue;
    }
    RationalSymbolicMatrix B = to_rational_symbolic(c.Ac);
    DegreeProfile g = deg_subdet(B);
    long long span = B.d().value() - B.d0().value();
    if (g.iterations > n * span)
      pr.add(c.cls + " #" + std::to_string(i) + ": deg_subdet " + std::to_string(g.iterations) + " iterations > " +
             std::to_string(n * span));
    if (g.values != c.prof.values) pr.add(c.cls + " #" + std::to_string(i) + ": deg_subdet disagrees with hungarian");
    worst_sub = std::max(worst_sub, g.iterations);
    csv << c.cls << "," << i << "," << n << "," << rstar << "," << span << "," << g.iterations << ","
        << c.prof.iterations << "\n";
  }
  report(7, pr.ok(), "iteration bounds n(d-d0) and 4 r* n^2",
         pr.ok() ? "max " + std::to_string(worst_sub) + " subdet, " + std::to_string(worst_h) + " hungarian iterations"
                 : pr.str(),
         seconds_since(t0));
}

// 8. ---------------------------------------------------------------------

void c8() {
  auto t0 = std::chrono::steady_clock::now();
  Problems pr;
  long solved = 0;
  for (std::size_t i = 0; i < g_cases.size(); ++i) {
    const Case& c = g_cases[i];
    std::string tag = c.cls + " #" + std::to_string(i);
    if (!is_concave(c.prof.values)) pr.add(tag + ": profile not concave");
    for (std::size_t l = 0; l < c.prof.values.size(); ++l) {
      if (!c.prof.values[l].finite()) continue;
      std::vector<long long> u;
      try {
        u = optimize_Q(c.Ac, static_cast<int>(l));
      } catch (const std::exception& e) {
        pr.add(tag + " l=" + std::to_string(l) + ": " + e.what());
        continue;
      }
      long long ones = std::accumulate(u.begin(), u.end(), 0LL), cu = 0;
      for (std::size_t k = 0; k < u.size(); ++k) cu += c.Ac.c[k] * u[k];
      if (ones != static_cast<long long>(l) || Degree(cu) != c.prof.values[l])
        pr.add(tag + " l=" + std::to_string(l) + ": 1'u = " + std::to_string(ones) + ", c'u = " + std::to_string(cu));
      ++solved;
    }
  }
  report(8, pr.ok(), "concave profiles; optimize_Q gives 1'u = l and c'u = Delta_l",
         pr.ok() ? std::to_string(solved) + " optimize_Q calls" : pr.str(), seconds_since(t0));
}

// 9. ---------------------------------------------------------------------

void c9() {
  auto t0 = std::chrono::steady_clock::now();
  GraphInstance k3{3, 5, {{0, 1}, {0, 2}, {1, 2}}, {1, 1, 1}};
  WeightedSymbolicMatrix Ac = build_tutte(k3);
  DegreeProfile s = symmetric_hungarian(Ac);
  Rng rng(9);
  Degree small = delta_ell_oracle(Ac, 3, 20, rng);
  bool ok = s.values[3] == Degree(3) && small.is_neg_inf() && check_profile(Ac, s).empty();
  report(9, ok, "K3 over GF(5): Delta_3 = 3 while delta_3 = -inf",
         "Delta_3 " + s.values[3].str() + ", delta_3 " + small.str(), seconds_since(t0));
}

// 10. --------------------------------------------------------------------

MatF rows3(std::initializer_list<std::initializer_list<long long>> v) {
  MatF M(static_cast<Eigen::Index>(v.size()), 3);
  Eigen::Index i = 0;
  for (auto& r : v) {
    Eigen::Index j = 0;
    for (long long x : r) M(i, j++) = Gf(x, 3);
    ++i;
  }
  return M;
}

void c10() {
  auto t0 = std::chrono::steady_clock::now();
  BLDatum d;
  d.n = 3;
  d.p = 3;
  d.B = {rows3({{1, 0, 0}, {0, 1, 0}}), rows3({{1, 0, 0}, {0, 0, 1}}), rows3({{0, 1, 0}, {0, 0, 1}})};
  d.exponents = {Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  BlResult yes = bl_membership_rank2(d);
  BLDatum bad = d;
  bad.exponents[2] = Rational(3, 4);
  BlResult no = bl_membership_rank2(bad);
  bool cert = no.violated.has_value() || no.reason.rfind("dimension", 0) == 0;
  double s = seconds_since(t0);
  report(10, yes.member && !no.member && cert && no.lhs != no.rhs && s < 5,
         "BL (1/2,1/2,1/2) accepted, (1/2,1/2,3/4) rejected with a certificate",
         "accept: " + yes.reason + "; reject: " + no.reason, s);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "threw", e.what(), 0);
    }
  }
  std::cout << (g_failed ? std::to_string(g_failed) + " criterion(s) failed" : "all criteria passed") << std::endl;
  return g_failed ? 1 : 0;
}
