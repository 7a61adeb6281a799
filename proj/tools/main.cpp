// ncdeg: command-line front end.
//
// exit codes: 0 ok, 2 result is -inf / infeasible / not a member, 1 error

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "io.hpp"
#include "ncdeg/linalg.hpp"

using namespace ncdeg;
using io::json;

namespace {

struct Flags {
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
  int trials = kDefaultTrials;
  std::string solver = "auto";
  bool json_out = false;
  int ell = -1;
  std::string file, report_file;
};

AlgoOptions algo(const Flags& f) {
  AlgoOptions o;
  o.solver = parse_solver(f.solver);
  return o;
}

json header(const std::string& cmd, const Flags& f, const io::Instance& inst) {
  json j;
  j["command"] = cmd;
  j["seed"] = f.seed;
  j["instance"] = {{"kind", inst.kind}, {"p", inst.p}};
  return j;
}

std::string show(const Degree& d) { return d.str(); }

void print_profile(const json& rep) {
  std::cout << "l   Delta_l\n";
  for (std::size_t l = 0; l < rep["values"].size(); ++l) {
    const json& v = rep["values"][l];
    std::cout << l << "   " << (v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>())) << "\n";
  }
  std::cout << "iterations " << rep["iterations"] << ", " << rep["guarantee"].get<std::string>() << "\n";
}

int emit(const json& rep, const Flags& f, int code, const std::function<void()>& human) {
  if (f.json_out) std::cout << rep.dump(2) << "\n";
  else human();
  return code;
}

WeightedSymbolicMatrix square(const io::Instance& inst) {
  WeightedSymbolicMatrix Ac = inst.weighted();
  if (Ac.base.rows != Ac.base.cols) Ac = pad_square(Ac);
  return Ac;
}

int last_finite_code(const DegreeProfile& pr) { return pr.values.back().finite() ? 0 : 2; }

int cmd_ncrank(const Flags& f) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  const SymbolicMatrix& A = inst.weighted().base;
  Rng rng(f.seed);
  int r = nc_rank(A, rng, f.trials);
  json rep = header("ncrank", f, inst);
  rep["ncrank"] = r;
  rep["witness"] = nullptr;
  try {
    SymbolicMatrix Asq = A.rows == A.cols ? A : pad_square(A);
    FRWitness w = solve_mvsp(Asq, parse_solver(f.solver), true);
    if (A.rows == A.cols && w.value(A.rows, A.cols) == r) {
      auto basis = [](const Subspace& S) {
        json out = json::array();
        for (Eigen::Index i = 0; i < S.basis.rows(); ++i) {
          json row = json::array();
          for (Eigen::Index j = 0; j < S.basis.cols(); ++j) row.push_back(S.basis(i, j).value());
          out.push_back(row);
        }
        return out;
      };
      rep["witness"] = {{"r", w.r}, {"s", w.s}, {"U", basis(w.U)}, {"V", basis(w.V)}, {"dominant", w.dominant}};
    }
  } catch (const WitnessUnavailable&) {
  }
  return emit(rep, f, 0, [&] {
    std::cout << "nc-rank " << r << (rep["witness"].is_null() ? " (no witness)" : " (certified by a vanishing pair)")
              << "\n";
  });
}

int cmd_degdet(const Flags& f) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  RationalSymbolicMatrix B = to_rational_symbolic(square(inst));
  DegDetResult r = deg_det(B, algo(f));
  json rep = header("degdet", f, inst);
  rep["value"] = io::degree_json(r.value);
  rep["iterations"] = r.iterations;
  rep["dual"] = r.dual ? io::dual_to_json(*r.dual, inst.p) : json(nullptr);
  return emit(rep, f, r.value.finite() ? 0 : 2,
              [&] { std::cout << "deg Det = " << show(r.value) << " after " << r.iterations << " iterations\n"; });
}

int cmd_profile(const Flags& f, const std::string& which) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  DegreeProfile pr;
  if (which == "subdet") {
    pr = deg_subdet(to_rational_symbolic(square(inst)), algo(f));
  } else {
    pr = hungarian_deg_det(inst.weighted(), algo(f));
  }
  json rep = header(which, f, inst);
  rep.update(io::profile_to_json(pr, inst.p));
  return emit(rep, f, last_finite_code(pr), [&] { print_profile(rep); });
}

int cmd_fmm(const Flags& f) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  if (!inst.lines) throw std::invalid_argument("fmm needs a \"lines\" instance");
  FmmResult r = fmm_max_weight(*inst.lines, algo(f));
  json rep = header("fmm", f, inst);
  rep.update(io::profile_to_json(r.profile, inst.p));
  json half = json::array();
  for (const auto& h : r.per_ell) half.push_back(h ? json(to_string(*h)) : json("-inf"));
  rep["half_values"] = half;
  rep["max"] = to_string(r.max);
  return emit(rep, f, 0, [&] {
    std::cout << "max weight fractional matroid matching = " << to_string(r.max) << "\n";
    for (std::size_t l = 0; l < half.size(); ++l) std::cout << "l=" << l << "  " << half[l].get<std::string>() << "\n";
  });
}

int cmd_bl(const Flags& f) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  if (!inst.bl) throw std::invalid_argument("bl-member needs a \"bl\" instance");
  BlResult r = bl_membership_rank2(*inst.bl);
  json rep = header("bl-member", f, inst);
  rep["member"] = r.member;
  rep["reason"] = r.reason;
  rep["lhs"] = to_string(r.lhs);
  rep["rhs"] = to_string(r.rhs);
  if (r.violated) {
    json X = json::array();
    for (Eigen::Index i = 0; i < r.violated->basis.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < r.violated->basis.cols(); ++j) row.push_back(r.violated->basis(i, j).value());
      X.push_back(row);
    }
    rep["violated"] = X;
  } else {
    rep["violated"] = nullptr;
  }
  return emit(rep, f, r.member ? 0 : 2,
              [&] { std::cout << (r.member ? "member" : "not a member") << ": " << r.reason << "\n"; });
}

int cmd_oracle(const Flags& f) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  const WeightedSymbolicMatrix& Ac = inst.weighted();
  int lim = std::min(Ac.base.rows, Ac.base.cols);
  json rep = header("oracle", f, inst);
  rep["trials"] = f.trials;
  json rows = json::array();
  int lo = f.ell >= 0 ? f.ell : 0, hi = f.ell >= 0 ? f.ell : lim;
  for (int l = lo; l <= hi; ++l) {
    Rng r1 = Rng(f.seed).split(2 * static_cast<std::uint64_t>(l));
    Rng r2 = Rng(f.seed).split(2 * static_cast<std::uint64_t>(l) + 1);
    json row{{"ell", l},
             {"delta", io::degree_json(delta_ell_oracle(Ac, l, f.trials, r1))},
             {"Delta", io::degree_json(Delta_blowup_oracle(Ac, l, f.trials, r2))}};
    if (inst.bipartite && inst.bipartite->n <= kBruteMaxN)
      row["brute"] = io::degree_json(brute_force_matching(*inst.bipartite, l));
    if (inst.matroid_pair && inst.matroid_pair->n <= kBruteMaxN && inst.matroid_pair->m() <= kBruteMaxM)
      row["brute"] = io::degree_json(brute_force_matching(*inst.matroid_pair, l));
    if (inst.lines) {
      auto lp = fmp_lp_oracle(*inst.lines, l);
      row["fmp_lp"] = lp ? json(to_string(lp->value)) : json("infeasible");
    }
    rows.push_back(row);
  }
  rep["oracles"] = rows;
  return emit(rep, f, 0, [&] {
    for (const json& row : rows) {
      std::cout << "l=" << row["ell"];
      for (auto it = row.begin(); it != row.end(); ++it)
        if (it.key() != "ell") std::cout << "  " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
      std::cout << "\n";
    }
  });
}

int cmd_verify(const Flags& f) {
  std::ifstream in(f.report_file);
  if (!in) throw io::ParseError(f.report_file + ": cannot open");
  json rep;
  try {
    rep = json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::ParseError(f.report_file + ": " + e.what());
  }
  io::Instance inst = io::load_instance(f.file, f.prime);
  io::VerifyResult v = io::verify_report(rep, inst);
  json out{{"command", "verify"}, {"ok", v.ok}, {"checked", v.checked}, {"problems", v.problems}};
  return emit(out, f, v.ok ? 0 : 1, [&] {
    std::cout << (v.ok ? "OK" : "FAILED") << ": " << v.checked << " certificate(s) checked\n";
    for (const auto& p : v.problems) std::cout << "  " << p << "\n";
  });
}

int cmd_dump(const Flags& f) {
  io::Instance inst = io::load_instance(f.file, f.prime);
  std::cout << io::dump_instance(inst).dump(2) << "\n";
  return 0;
}

int cmd_selftest(const Flags& f) {
  int bad = 0;
  auto line = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++bad;
  };
  Rng rng(f.seed);
  GraphInstance k3{3, 65521, {{0, 1}, {0, 2}, {1, 2}}, {1, 1, 1}};
  WeightedSymbolicMatrix T = build_tutte(k3);
  MatF sub = shrink(T.base, random_substitution(3, 65521, rng));
  line(rank(sub) == 2 && nc_rank(T.base, rng) == 3, "K3 Tutte: rank 2, nc-rank 3");
  BipartiteInstance g{2, 65521, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {3, 1, 2, 4}};
  DegreeProfile h = hungarian_deg_det(build_edmonds(g));
  line(h.values == std::vector<Degree>{0, 4, 7} && check_profile(build_edmonds(g), h).empty(),
       "2x2 bipartite: Delta = (0, 4, 7), certified");
  GraphInstance k3s{3, 5, k3.edges, {1, 1, 1}};
  DegreeProfile s = symmetric_hungarian(build_tutte(k3s));
  line(s.values[3] == Degree(3), "K3 over GF(5): Delta_3 = 3");
  LineCollection H;
  H.n = 3;
  H.p = 3;
  H.a = MatF(3, 3);
  H.b = MatF(3, 3);
  int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) {
      H.a(k, i) = Gf(i == pairs[k][0], 3);
      H.b(k, i) = Gf(i == pairs[k][1], 3);
    }
  H.weights = {1, 1, 1};
  line(fmp_lp_oracle(H).value == Rational(3, 2), "K3 lines: FMP optimum 3/2");
  std::cout << (bad ? "selftest failed" : "selftest passed") << "\n";
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degrees of noncommutative symbolic determinants over GF(p)"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub, bool needs_file) {
    if (needs_file) sub->add_option("instance", f.file, "instance JSON file")->required();
    sub->add_option("--seed", f.seed, "random seed")->capture_default_str();
    sub->add_option("--prime", f.prime, "field prime when the file has none");
    sub->add_option("--trials", f.trials, "Monte-Carlo trials")->capture_default_str();
    sub->add_option("--solver", f.solver, "witness solver")
        ->check(CLI::IsMember({"auto", "exhaustive", "bipartite", "matroid"}))
        ->capture_default_str();
    sub->add_flag("--json", f.json_out, "JSON report on stdout");
  };
  std::map<std::string, std::function<int()>> run;
  auto add = [&](const std::string& name, const std::string& help, std::function<int()> fn, bool file = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, file);
    run[name] = std::move(fn);
    return sub;
  };
  add("ncrank", "nc-rank with a vanishing-subspace certificate", [&] { return cmd_ncrank(f); });
  add("degdet", "deg Det by Deg-Det (general duals)", [&] { return cmd_degdet(f); });
  add("subdet", "all Delta_l by Deg-SubDet (general duals)", [&] { return cmd_profile(f, "subdet"); });
  add("hungarian", "all Delta_l by Hungarian Deg-Det (field duals)", [&] { return cmd_profile(f, "hungarian"); });
  add("fmm", "weighted fractional linear matroid matching", [&] { return cmd_fmm(f); });
  add("bl-member", "rank-2 Brascamp-Lieb polytope membership", [&] { return cmd_bl(f); });
  add("oracle", "Monte-Carlo and brute-force oracles", [&] { return cmd_oracle(f); })
      ->add_option("--ell", f.ell, "single cardinality");
  CLI::App* ver = app.add_subcommand("verify", "re-check the certificates in a report");
  ver->add_option("report", f.report_file, "report JSON")->required();
  common(ver, true);
  run["verify"] = [&] { return cmd_verify(f); };
  add("dump", "canonical form of an instance", [&] { return cmd_dump(f); });
  add("selftest", "built-in smoke checks", [&] { return cmd_selftest(f); }, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    for (auto& [name, fn] : run)
      if (app.got_subcommand(name)) return fn();
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (use a smaller field or a structured --solver)\n";
  } catch (const WitnessUnavailable& e) {
    std::cerr << "no witness: " << e.what() << " (try --solver bipartite/matroid or a field below 8)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
