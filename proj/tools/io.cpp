#include "io.hpp"

#include <fstream>
#include <sstream>

#include "ncdeg/linalg.hpp"

namespace ncdeg::io {

namespace {

std::size_t uz(long long i) { return static_cast<std::size_t>(i); }

const json& need(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(ctx + ": missing \"" + key + "\"");
  return j.at(key);
}

long long get_int(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer, got " + j.dump());
  return j.get<long long>();
}

Rational get_rational(const json& j, const std::string& ctx) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(ctx + ": expected an integer or \"a/b\", got " + j.dump());
}

json rational_json(const Rational& q) {
  if (denominator(q) == 1) {
    BigInt n = numerator(q);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return static_cast<long long>(n);
  }
  return to_string(q);
}

std::vector<long long> get_weights(const json& j, std::size_t want, const std::string& ctx) {
  if (!j.contains("weights")) return std::vector<long long>(want, 0);
  const json& w = j.at("weights");
  if (!w.is_array() || w.size() != want)
    throw ParseError(ctx + ".weights: expected " + std::to_string(want) + " integers");
  std::vector<long long> out;
  for (std::size_t k = 0; k < w.size(); ++k) out.push_back(get_int(w[k], ctx + ".weights[" + std::to_string(k) + "]"));
  return out;
}

MatF get_vectors(const json& j, int n, std::uint32_t p, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected a list of vectors");
  MatF M(static_cast<Eigen::Index>(j.size()), n);
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string c = ctx + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || static_cast<int>(j[k].size()) != n)
      throw ParseError(c + ": expected " + std::to_string(n) + " entries");
    for (int i = 0; i < n; ++i) M(static_cast<Eigen::Index>(k), i) = Gf(get_int(j[k][uz(i)], c), p);
  }
  return M;
}

json vectors_json(const MatF& M) {
  json out = json::array();
  for (Eigen::Index k = 0; k < M.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index i = 0; i < M.cols(); ++i) row.push_back(M(k, i).value());
    out.push_back(row);
  }
  return out;
}

std::vector<std::pair<int, int>> get_edges(const json& j, int n, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected a list of [i, j] pairs");
  std::vector<std::pair<int, int>> e;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string c = ctx + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) throw ParseError(c + ": expected [i, j]");
    long long a = get_int(j[k][0], c), b = get_int(j[k][1], c);
    if (a < 1 || b < 1 || a > n || b > n)
      throw ParseError(c + ": edge [" + std::to_string(a) + ", " + std::to_string(b) + "] outside 1.." + std::to_string(n));
    e.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  return e;
}

json edges_json(const std::vector<std::pair<int, int>>& e) {
  json out = json::array();
  for (auto [a, b] : e) out.push_back({a + 1, b + 1});
  return out;
}

SymbolicMatrix get_symbolic(const json& j, std::uint32_t p, const std::string& ctx) {
  int rows = static_cast<int>(get_int(need(j, "rows", ctx), ctx + ".rows"));
  int cols = static_cast<int>(get_int(need(j, "cols", ctx), ctx + ".cols"));
  if (rows < 0 || cols < 0) throw ParseError(ctx + ": negative dimension");
  const json& terms = need(j, "terms", ctx);
  if (!terms.is_array()) throw ParseError(ctx + ".terms: expected a list of terms");
  std::vector<MatF> out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::string c = ctx + ".terms[" + std::to_string(k) + "]";
    MatF M = MatF::Constant(rows, cols, Gf(0, p));
    if (!terms[k].is_array()) throw ParseError(c + ": expected a list of [i, j, value] triples");
    for (std::size_t t = 0; t < terms[k].size(); ++t) {
      const json& tr = terms[k][t];
      std::string ct = c + "[" + std::to_string(t) + "]";
      if (!tr.is_array() || tr.size() != 3) throw ParseError(ct + ": expected [i, j, value]");
      long long i = get_int(tr[0], ct), jj = get_int(tr[1], ct), v = get_int(tr[2], ct);
      if (i < 1 || jj < 1 || i > rows || jj > cols)
        throw ParseError(ct + ": index (" + std::to_string(i) + ", " + std::to_string(jj) + ") outside " +
                         std::to_string(rows) + "x" + std::to_string(cols));
      M(i - 1, jj - 1) = Gf(v, p);
    }
    out.push_back(M);
  }
  return make_symbolic(rows, cols, p, out);
}

json terms_json(const SymbolicMatrix& A) {
  json terms = json::array();
  for (const MatF& M : A.terms) {
    json t = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      for (Eigen::Index j = 0; j < M.cols(); ++j)
        if (!M(i, j).is_zero()) t.push_back({i + 1, j + 1, M(i, j).value()});
    terms.push_back(t);
  }
  return terms;
}

json fieldmat_json(const MatF& M, std::uint32_t p) {
  json out = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j).bind(p).value());
    out.push_back(row);
  }
  return out;
}

MatF fieldmat_from(const json& j, std::uint32_t p, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected a matrix");
  int r = static_cast<int>(j.size());
  int c = r ? static_cast<int>(j[0].size()) : 0;
  MatF M(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[uz(i)].is_array() || static_cast<int>(j[uz(i)].size()) != c) throw ParseError(ctx + ": ragged matrix");
    for (int k = 0; k < c; ++k) M(i, k) = Gf(get_int(j[uz(i)][uz(k)], ctx), p);
  }
  return M;
}

json poly_json(const Poly& q, std::uint32_t p) {
  json out = json::array();
  Poly b = q.bind(p);  // keep alive, coeffs() is a reference
  for (std::uint32_t c : b.coeffs()) out.push_back(c);
  return out;
}

Poly poly_from(const json& j, std::uint32_t p, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected a coefficient list");
  std::vector<std::uint32_t> c;
  for (const json& x : j) c.push_back(static_cast<std::uint32_t>(((get_int(x, ctx) % p) + p) % p));
  return Poly(c, p);
}

json ratmat_json(const RationalMatrix& M, std::uint32_t p) {
  json out = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      RatFn r = M(i, j).reduced();
      row.push_back({{"num", poly_json(r.num(), p)}, {"den", poly_json(r.den(), p)}});
    }
    out.push_back(row);
  }
  return out;
}

RationalMatrix ratmat_from(const json& j, std::uint32_t p, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected a matrix");
  int r = static_cast<int>(j.size());
  int c = r ? static_cast<int>(j[0].size()) : 0;
  RationalMatrix M(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) {
      const json& e = j.at(uz(i)).at(uz(k));
      Poly den = poly_from(need(e, "den", ctx), p, ctx);
      if (den.is_zero()) throw ParseError(ctx + ": zero denominator");
      M(i, k) = RatFn(poly_from(need(e, "num", ctx), p, ctx), den);
    }
  return M;
}


}  // namespace

const WeightedSymbolicMatrix& Instance::weighted() const {
  if (!matrix) throw std::invalid_argument("a " + kind + " instance has no symbolic matrix");
  return *matrix;
}

Instance parse_instance(const json& j, std::uint32_t default_p) {
  Instance inst;
  const std::string ctx = "instance";
  inst.kind = need(j, "kind", ctx).is_string() ? j.at("kind").get<std::string>() : "";
  if (j.contains("field")) {
    long long p = get_int(need(j.at("field"), "p", ctx + ".field"), ctx + ".field.p");
    if (p < 2 || p > 0xffffffffLL) throw ParseError(ctx + ".field.p: out of range");
    inst.p = static_cast<std::uint32_t>(p);
  } else {
    inst.p = default_p;
  }
  if (!inst.p) throw ParseError(ctx + ": no field given (add \"field\": {\"p\": ...} or pass --prime)");
  if (!is_prime(inst.p)) throw ParseError(ctx + ".field.p: " + std::to_string(inst.p) + " is not prime");
  std::uint32_t p = inst.p;
  try {
    if (inst.kind == "symbolic" || inst.kind == "weighted") {
      SymbolicMatrix A = get_symbolic(j, p, ctx);
      std::vector<long long> c = inst.kind == "weighted" ? get_weights(j, uz(A.m()), ctx)
                                                         : std::vector<long long>(uz(A.m()), 0);
      if (inst.kind == "weighted" && !j.contains("weights")) throw ParseError(ctx + ": missing \"weights\"");
      inst.matrix = WeightedSymbolicMatrix{A, c};
    } else if (inst.kind == "bipartite" || inst.kind == "graph") {
      int n = static_cast<int>(get_int(need(j, "n", ctx), ctx + ".n"));
      auto e = get_edges(need(j, "edges", ctx), n, ctx + ".edges");
      auto w = get_weights(j, e.size(), ctx);
      if (inst.kind == "bipartite") {
        inst.bipartite = BipartiteInstance{n, p, e, w};
        inst.matrix = build_edmonds(*inst.bipartite);
      } else {
        inst.graph = GraphInstance{n, p, e, w};
        inst.matrix = build_tutte(*inst.graph);
      }
    } else if (inst.kind == "matroid-pair" || inst.kind == "lines") {
      int n = static_cast<int>(get_int(need(j, "n", ctx), ctx + ".n"));
      MatF a = get_vectors(need(j, "a", ctx), n, p, ctx + ".a");
      MatF b = get_vectors(need(j, "b", ctx), n, p, ctx + ".b");
      if (a.rows() != b.rows()) throw ParseError(ctx + ": a and b list different numbers of vectors");
      auto w = get_weights(j, uz(a.rows()), ctx);
      if (inst.kind == "matroid-pair") {
        inst.matroid_pair = MatroidPairInstance{n, p, a, b, w};
        inst.matrix = build_matroid_intersection(*inst.matroid_pair);
      } else {
        LineCollection H;
        H.n = n;
        H.p = p;
        H.a = a;
        H.b = b;
        H.weights = w;
        inst.lines = H;
        inst.matrix = build_matroid_matching(H);
      }
    } else if (inst.kind == "bl") {
      BLDatum d;
      d.n = static_cast<int>(get_int(need(j, "n", ctx), ctx + ".n"));
      d.p = p;
      const json& maps = need(j, "maps", ctx);
      const json& ex = need(j, "exponents", ctx);
      if (!maps.is_array() || !ex.is_array() || maps.size() != ex.size())
        throw ParseError(ctx + ": \"maps\" and \"exponents\" must be lists of equal length");
      for (std::size_t k = 0; k < maps.size(); ++k) {
        d.B.push_back(get_vectors(maps[k], d.n, p, ctx + ".maps[" + std::to_string(k) + "]"));
        d.exponents.push_back(get_rational(ex[k], ctx + ".exponents[" + std::to_string(k) + "]"));
      }
      d.validate();
      inst.bl = d;
    } else {
      throw ParseError(ctx + ".kind: unknown kind \"" + inst.kind +
                       "\" (symbolic, weighted, bipartite, graph, matroid-pair, lines, bl)");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(ctx + ": " + e.what());
  }
  return inst;
}

Instance load_instance(const std::string& path, std::uint32_t default_p) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_instance(j, default_p);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json dump_instance(const Instance& inst) {
  json j;
  j["kind"] = inst.kind;
  j["field"] = {{"p", inst.p}};
  if (inst.kind == "symbolic" || inst.kind == "weighted") {
    const auto& A = inst.matrix->base;
    j["rows"] = A.rows;
    j["cols"] = A.cols;
    j["terms"] = terms_json(A);
    if (inst.kind == "weighted") j["weights"] = inst.matrix->c;
  } else if (inst.bipartite) {
    j["n"] = inst.bipartite->n;
    j["edges"] = edges_json(inst.bipartite->edges);
    j["weights"] = inst.bipartite->weights;
  } else if (inst.graph) {
    j["n"] = inst.graph->n;
    j["edges"] = edges_json(inst.graph->edges);
    j["weights"] = inst.graph->weights;
  } else if (inst.matroid_pair) {
    j["n"] = inst.matroid_pair->n;
    j["a"] = vectors_json(inst.matroid_pair->a);
    j["b"] = vectors_json(inst.matroid_pair->b);
    j["weights"] = inst.matroid_pair->weights;
  } else if (inst.lines) {
    j["n"] = inst.lines->n;
    j["a"] = vectors_json(inst.lines->a);
    j["b"] = vectors_json(inst.lines->b);
    j["weights"] = inst.lines->weights;
  } else if (inst.bl) {
    j["n"] = inst.bl->n;
    json maps = json::array(), ex = json::array();
    for (const MatF& B : inst.bl->B) maps.push_back(vectors_json(B));
    for (const Rational& q : inst.bl->exponents) ex.push_back(rational_json(q));
    j["maps"] = maps;
    j["exponents"] = ex;
  }
  return j;
}

json degree_json(const Degree& d) {
  if (d.finite()) return d.value();
  return d.is_neg_inf() ? "-inf" : "+inf";
}

Degree degree_from_json(const json& j) {
  if (j.is_number_integer()) return Degree(j.get<long long>());
  if (j == "-inf") return Degree::neg_inf();
  if (j == "+inf") return Degree::pos_inf();
  throw ParseError("expected an integer or \"-inf\", got " + j.dump());
}

json dual_to_json(const DualSolution& d, std::uint32_t p) {
  json j;
  j["mode"] = mode_name(d.mode);
  json a = json::array(), b = json::array();
  for (const Rational& x : d.alpha) a.push_back(rational_json(x));
  for (const Rational& x : d.beta) b.push_back(rational_json(x));
  j["alpha"] = a;
  j["beta"] = b;
  if (d.mode == DualMode::General) {
    j["P"] = ratmat_json(d.Pr, p);
    j["Q"] = ratmat_json(d.Qr, p);
  } else {
    j["P"] = fieldmat_json(d.P, p);
    j["Q"] = fieldmat_json(d.Q, p);
  }
  return j;
}

DualSolution dual_from_json(const json& j, std::uint32_t p) {
  DualSolution d;
  std::string mode = need(j, "mode", "dual").get<std::string>();
  if (mode == "general") d.mode = DualMode::General;
  else if (mode == "monomial") d.mode = DualMode::Monomial;
  else if (mode == "symmetric") d.mode = DualMode::Symmetric;
  else throw ParseError("dual.mode: unknown mode \"" + mode + "\"");
  for (const json& x : need(j, "alpha", "dual")) d.alpha.push_back(get_rational(x, "dual.alpha"));
  for (const json& x : need(j, "beta", "dual")) d.beta.push_back(get_rational(x, "dual.beta"));
  if (d.mode == DualMode::General) {
    d.Pr = ratmat_from(need(j, "P", "dual"), p, "dual.P");
    d.Qr = ratmat_from(need(j, "Q", "dual"), p, "dual.Q");
  } else {
    d.P = fieldmat_from(need(j, "P", "dual"), p, "dual.P");
    d.Q = fieldmat_from(need(j, "Q", "dual"), p, "dual.Q");
  }
  return d;
}

json profile_to_json(const DegreeProfile& prof, std::uint32_t p) {
  json j;
  json vals = json::array(), duals = json::array();
  for (const Degree& v : prof.values) vals.push_back(degree_json(v));
  for (std::size_t l = 0; l < prof.duals.size(); ++l)
    if (prof.duals[l] && l < prof.values.size() && prof.values[l].finite()) {
      json d = dual_to_json(*prof.duals[l], p);
      d["ell"] = l;
      duals.push_back(d);
    }
  j["values"] = vals;
  j["duals"] = duals;
  j["iterations"] = prof.iterations;
  j["dominant"] = prof.dominant;
  j["guarantee"] = prof.dominant ? "polynomial (dominant witnesses)" : "pseudo-polynomial (non-dominant witness)";
  j["kappa2_violations"] = prof.kappa2_violations;
  j["rank_trace"] = prof.rank_trace;
  return j;
}

namespace {

void problem(VerifyResult& r, const std::string& s) {
  r.ok = false;
  r.problems.push_back(s);
}

template <typename Mat>
void verify_profile(const json& rep, const Mat& A, std::uint32_t p, int n, VerifyResult& r) {
  std::vector<Degree> vals;
  for (const json& v : need(rep, "values", "report")) vals.push_back(degree_from_json(v));
  if (vals.empty() || vals[0] != Degree(0)) problem(r, "values[0] is not 0");
  if (!is_concave(vals)) problem(r, "values are not concave");
  std::vector<char> seen(vals.size(), 0);
  for (const json& dj : need(rep, "duals", "report")) {
    std::size_t l = dj.at("ell").get<std::size_t>();
    if (l >= vals.size() || !vals[l].finite()) {
      problem(r, "dual for l=" + std::to_string(l) + " has no finite value");
      continue;
    }
    DualSolution d = dual_from_json(dj, p);
    if (d.n() != n) {
      problem(r, "dual for l=" + std::to_string(l) + " has the wrong size");
      continue;
    }
    std::string e = check_dual(A, d);
    if (!e.empty()) problem(r, "l=" + std::to_string(l) + ": " + e);
    Rational obj = d.objective(static_cast<int>(l));
    if (obj != Rational(vals[l].value()))
      problem(r, "l=" + std::to_string(l) + ": dual objective " + to_string(obj) + " differs from " +
                     std::to_string(vals[l].value()));
    seen[l] = 1;
    ++r.checked;
  }
  for (std::size_t l = 1; l < vals.size(); ++l)
    if (vals[l].finite() && !seen[l]) problem(r, "no certificate for l=" + std::to_string(l));
}

}  // namespace

VerifyResult verify_report(const json& rep, const Instance& inst) {
  VerifyResult r;
  std::string cmd = need(rep, "command", "report").get<std::string>();
  try {
    if (cmd == "degdet" || cmd == "subdet") {
      WeightedSymbolicMatrix Ac = inst.weighted();
      if (Ac.base.rows != Ac.base.cols) Ac = pad_square(Ac);
      RationalSymbolicMatrix B = to_rational_symbolic(Ac);
      if (cmd == "subdet") {
        verify_profile(rep, B, inst.p, B.n, r);
      } else {
        Degree v = degree_from_json(need(rep, "value", "report"));
        if (v.finite()) {
          DualSolution d = dual_from_json(need(rep, "dual", "report"), inst.p);
          std::string e = check_dual(B, d);
          if (!e.empty()) problem(r, e);
          if (d.objective(B.n) != Rational(v.value())) problem(r, "dual objective differs from the value");
          ++r.checked;
        }
      }
    } else if (cmd == "hungarian") {
      WeightedSymbolicMatrix Ac = inst.weighted();
      if (Ac.base.rows != Ac.base.cols) Ac = pad_square(Ac);
      verify_profile(rep, Ac, inst.p, Ac.base.rows, r);
    } else if (cmd == "fmm") {
      if (!inst.lines) throw std::invalid_argument("fmm reports need a lines instance");
      WeightedSymbolicMatrix Ac = build_matroid_matching(*inst.lines);
      verify_profile(rep, Ac, inst.p, Ac.base.rows, r);
      std::vector<Degree> vals;
      for (const json& v : rep.at("values")) vals.push_back(degree_from_json(v));
      const json& half = need(rep, "half_values", "report");
      for (std::size_t l = 0; l < vals.size(); ++l)
        if (vals[l].finite() && get_rational(half.at(l), "half_values") != Rational(vals[l].value(), 2))
          problem(r, "half value for l=" + std::to_string(l) + " is not Delta_l / 2");
    } else if (cmd == "ncrank") {
      const auto& A = inst.weighted().base;
      int rank = static_cast<int>(need(rep, "ncrank", "report").get<long long>());
      const json& w = need(rep, "witness", "report");
      if (!w.is_null()) {
        MatF U = fieldmat_from(w.at("U"), inst.p, "witness.U"), V = fieldmat_from(w.at("V"), inst.p, "witness.V");
        if (U.rows() == 0) U = MatF(0, A.rows);
        if (V.rows() == 0) V = MatF(0, A.cols);
        FRWitness fr = witness_from_subspaces(span_rows(U, A.rows, inst.p), span_rows(V, A.cols, inst.p), false);
        if (!verify_witness(A, fr)) problem(r, "witness subspaces do not vanish on every term");
        if (fr.value(A.rows, A.cols) != rank) problem(r, "witness bound differs from the reported nc-rank");
        ++r.checked;
      }
    } else if (cmd == "bl-member") {
      if (!inst.bl) throw std::invalid_argument("bl-member reports need a bl instance");
      BlResult b = bl_membership_rank2(*inst.bl);
      if (b.member != need(rep, "member", "report").get<bool>()) problem(r, "membership verdict differs");
      const json& X = rep.at("violated");
      if (!X.is_null()) {
        MatF basis = fieldmat_from(X, inst.p, "violated");
        if (basis.rows() == 0) basis = MatF(0, inst.bl->n);
        Subspace S = span_rows(basis, inst.bl->n, inst.p);
        Rational lhs = 0;
        for (std::size_t k = 0; k < inst.bl->B.size(); ++k) {
          Subspace H = span_rows(inst.bl->B[k].unaryExpr([&](const Gf& x) { return x.bind(inst.p); }), inst.bl->n, inst.p);
          MatF st(H.dim() + S.dim(), inst.bl->n);
          st.topRows(H.dim()) = H.basis;
          if (S.dim()) st.bottomRows(S.dim()) = S.basis;
          lhs += inst.bl->exponents[k] * (H.dim() + S.dim() - rank(st));
        }
        if (!(lhs > S.dim())) problem(r, "reported subspace is not violated");
      }
      ++r.checked;
    }
  } catch (const std::exception& e) {
    problem(r, std::string("cannot verify: ") + e.what());
  }
  return r;
}

}  // namespace ncdeg::io
