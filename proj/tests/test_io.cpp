#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "io.hpp"

using namespace ncdeg;
using io::json;

namespace {

const std::string kInstances = NCDEG_INSTANCE_DIR;

json hungarian_report(const io::Instance& inst) {
  json rep = io::profile_to_json(hungarian_deg_det(inst.weighted()), inst.p);
  rep["command"] = "hungarian";
  return rep;
}

}  // namespace

TEST_CASE("minimal instance parses") {
  io::Instance inst = io::parse_instance(json::parse(R"({"kind":"symbolic","field":{"p":7},"rows":1,"cols":1,
                                                           "terms":[[[1,1,3]]]})"));
  REQUIRE(inst.matrix);
  CHECK(inst.matrix->base.m() == 1);
  CHECK(inst.matrix->base.terms[0](0, 0) == Gf(3, 7));
  CHECK(inst.matrix->c == std::vector<long long>{0});
}

TEST_CASE("parse errors name the offending piece") {
  auto msg = [](const char* text) {
    try {
      io::parse_instance(json::parse(text));
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  std::string m = msg(R"({"kind":"symbolic","field":{"p":7},"rows":2,"cols":2,"terms":[[[1,1,1],[3,1,1]]]})");
  CHECK(m.find("terms[0][1]") != std::string::npos);
  CHECK(m.find("(3, 1)") != std::string::npos);
  CHECK(msg(R"({"kind":"symbolic","field":{"p":8},"rows":1,"cols":1,"terms":[]})").find("not prime") !=
        std::string::npos);
  CHECK(msg(R"({"kind":"bipartite","field":{"p":5},"n":2,"edges":[[1,3]]})").find("edges[0]") != std::string::npos);
  CHECK(msg(R"({"kind":"teapot","field":{"p":5}})").find("unknown kind") != std::string::npos);
  CHECK(msg(R"({"kind":"symbolic","rows":1,"cols":1,"terms":[]})").find("--prime") != std::string::npos);
  CHECK(msg(R"({"kind":"weighted","field":{"p":5},"rows":1,"cols":1,"terms":[[[1,1,1]]],"weights":[1,2]})") !=
        "no error");
}

TEST_CASE("bipartite kind builds the Edmonds matrix") {
  io::Instance inst = io::load_instance(kInstances + "/k22.json");
  REQUIRE(inst.bipartite);
  WeightedSymbolicMatrix E = build_edmonds(*inst.bipartite);
  CHECK(inst.weighted().c == E.c);
  for (int k = 0; k < E.base.m(); ++k) CHECK(inst.weighted().base.terms[std::size_t(k)] == E.base.terms[std::size_t(k)]);
}

TEST_CASE("dump round trips every sample instance") {
  int seen = 0;
  for (const auto& f : std::filesystem::directory_iterator(kInstances)) {
    if (f.path().extension() != ".json") continue;
    ++seen;
    io::Instance a = io::load_instance(f.path().string());
    json d1 = io::dump_instance(a);
    io::Instance b = io::parse_instance(d1);
    CHECK_MESSAGE(io::dump_instance(b).dump() == d1.dump(), f.path().string());
  }
  CHECK(seen >= 8);
}

TEST_CASE("reports are byte-stable and verify") {
  for (const char* name : {"k3", "k22", "matroid", "lines_k3", "diag"}) {
    io::Instance inst = io::load_instance(kInstances + "/" + name + ".json");
    json r1 = hungarian_report(inst), r2 = hungarian_report(inst);
    CHECK(r1.dump() == r2.dump());
    io::VerifyResult v = io::verify_report(json::parse(r1.dump()), inst);
    CHECK_MESSAGE(v.ok, name);
    CHECK(v.checked >= 1);
  }
}

TEST_CASE("hungarian on k3 with unit weights") {
  io::Instance inst = io::load_instance(kInstances + "/k3.json");
  json rep = hungarian_report(inst);
  CHECK(rep["values"] == json::array({0, 1, 2, 3}));
}

TEST_CASE("verify rejects a tampered value") {
  io::Instance inst = io::load_instance(kInstances + "/k22.json");
  json rep = hungarian_report(inst);
  rep["values"][2] = 8;
  CHECK(!io::verify_report(rep, inst).ok);
  json rep2 = hungarian_report(inst);
  rep2["duals"][0]["alpha"][0] = 100;
  CHECK(!io::verify_report(rep2, inst).ok);
}

TEST_CASE("general duals survive JSON") {
  io::Instance inst = io::load_instance(kInstances + "/k3.json");
  RationalSymbolicMatrix B = to_rational_symbolic(inst.weighted());
  DegreeProfile pr = deg_subdet(B);
  for (std::size_t l = 0; l < pr.duals.size(); ++l) {
    if (!pr.duals[l]) continue;
    DualSolution back = io::dual_from_json(json::parse(io::dual_to_json(*pr.duals[l], inst.p).dump()), inst.p);
    CHECK(check_dual(B, back) == "");
    CHECK(back.objective(int(l)) == pr.duals[l]->objective(int(l)));
  }
}

TEST_CASE("degree json") {
  CHECK(io::degree_json(Degree(4)) == json(4));
  CHECK(io::degree_json(Degree::neg_inf()) == json("-inf"));
  CHECK(io::degree_from_json(json("-inf")).is_neg_inf());
  CHECK(io::degree_from_json(json(-3)) == Degree(-3));
}
