// Exercises the shared library surface: handles, status codes, JSON
// documents and string ownership.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <string>

#include "json.hpp"
#include "polylasso/polylasso.h"

using Json = nlohmann::json;

namespace {

std::string corpus(const std::string& name) {
  return std::string(POLYLASSO_CORPUS_DIR) + "/" + name + ".lasso";
}

bool solver_available() {
  if (const char* env = std::getenv("POLYLASSO_SOLVER"); env && *env) return true;
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return true;
  return std::system("command -v node >/dev/null 2>&1") == 0;
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { pl_string_free(ptr); }
};

}  // namespace

TEST_CASE("argument validation") {
  CHECK(pl_problem_from_string(nullptr, nullptr, nullptr) == PL_ERR_ARGUMENT);
  CHECK(pl_system_unknowns(nullptr) == 0);
  CHECK(std::string(pl_status_name(PL_ERR_PARSE)) == "parse");
  CHECK(std::string(pl_version()).empty() == false);
}

TEST_CASE("parse errors surface with messages") {
  pl_problem* p = nullptr;
  OwnedString err;
  pl_status st = pl_problem_from_string("problem x\nvars a\nstem: a = b\n", &p, &err.ptr);
  CHECK(st == PL_ERR_PARSE);
  CHECK(p == nullptr);
  REQUIRE(err.ptr != nullptr);
  CHECK(std::string(err.ptr).find("undeclared") != std::string::npos);
}

TEST_CASE("problem lifecycle and info") {
  pl_problem* p = nullptr;
  OwnedString err;
  REQUIRE(pl_problem_from_file(corpus("productSY").c_str(), &p, &err.ptr) == PL_OK);
  OwnedString info;
  REQUIRE(pl_problem_info_json(p, &info.ptr) == PL_OK);
  Json j = Json::parse(std::string(info.ptr));
  CHECK(j["name"] == "productSY");
  CHECK(j["params"].size() == 7);
  CHECK(j["testcases"] == 2);
  CHECK(j["transitions"][0]["deterministic"] == true);

  OwnedString rendered;
  REQUIRE(pl_problem_render(p, &rendered.ptr) == PL_OK);
  pl_problem* reparsed = nullptr;
  REQUIRE(pl_problem_from_string(rendered.ptr, &reparsed, &err.ptr) == PL_OK);
  pl_problem_free(reparsed);
  pl_problem_free(p);
}

TEST_CASE("system building exposes the documented counts") {
  pl_problem* p = nullptr;
  OwnedString err;
  REQUIRE(pl_problem_from_file(corpus("product").c_str(), &p, &err.ptr) == PL_OK);

  pl_build_options build;
  pl_build_options_init(&build);
  pl_system* sys = nullptr;
  REQUIRE(pl_system_build(p, &build, &sys, &err.ptr) == PL_OK);
  CHECK(pl_system_core_unknowns(sys) == 20);
  CHECK(pl_system_unknowns(sys) == 20);
  CHECK(pl_system_equalities(sys) > 0);

  OwnedString smt;
  REQUIRE(pl_system_smtlib(sys, &smt.ptr) == PL_OK);
  CHECK(std::string(smt.ptr).rfind("(set-logic QF_NRA)", 0) == 0);

  OwnedString dump;
  REQUIRE(pl_system_json(sys, &dump.ptr) == PL_OK);
  Json j = Json::parse(std::string(dump.ptr));
  CHECK(j["unknowns"].size() == 20);
  bool has_stem = false;
  for (auto& c : j["constraints"])
    if (c["provenance"].get<std::string>().rfind("stem", 0) == 0) has_stem = true;
  CHECK(has_stem);

  pl_system_free(sys);
  pl_problem_free(p);
}

TEST_CASE("verify through the C interface") {
  pl_problem* p = nullptr;
  OwnedString err;
  REQUIRE(pl_problem_from_file(corpus("product").c_str(), &p, &err.ptr) == PL_OK);
  pl_result* res = nullptr;
  REQUIRE(pl_verify_invariant(p, "s + x0*y - x0*y0", &res, &err.ptr) == PL_OK);
  CHECK(pl_result_status(res) == PL_RUN_CERTIFIED);
  OwnedString report;
  REQUIRE(pl_result_report_json(res, &report.ptr) == PL_OK);
  Json j = Json::parse(std::string(report.ptr));
  CHECK(j["verdict"] == "pass");
  pl_result_free(res);

  pl_result* bad = nullptr;
  CHECK(pl_verify_invariant(p, "s + * y", &bad, &err.ptr) == PL_ERR_PARSE);
  pl_problem_free(p);
}

TEST_CASE("simulate through the C interface") {
  pl_problem* p = nullptr;
  OwnedString err;
  REQUIRE(pl_problem_from_file(corpus("product").c_str(), &p, &err.ptr) == PL_OK);
  pl_result* res = nullptr;
  REQUIRE(pl_simulate(p, "{\"x0\":\"3\",\"y0\":\"2\",\"y\":\"2\",\"s\":\"0\"}", "tau,tau",
                      -1, &res, &err.ptr) == PL_OK);
  CHECK(pl_result_status(res) == PL_RUN_CERTIFIED);
  OwnedString report;
  pl_result_report_json(res, &report.ptr);
  Json j = Json::parse(std::string(report.ptr));
  CHECK(j["valid_execution"] == true);
  CHECK(j["states"].back()["state"]["s"] == "6");
  pl_result_free(res);
  pl_problem_free(p);
}

TEST_CASE("full run through the C interface" * doctest::skip(!solver_available())) {
  pl_problem* p = nullptr;
  OwnedString err;
  REQUIRE(pl_problem_from_file(corpus("productS").c_str(), &p, &err.ptr) == PL_OK);
  pl_build_options build;
  pl_build_options_init(&build);
  pl_solver_options solver;
  pl_solver_options_init(&solver);
  pl_result* res = nullptr;
  pl_status st = pl_run(p, &build, &solver, &res, &err.ptr);
  REQUIRE_MESSAGE(st == PL_OK, std::string(err.ptr ? err.ptr : ""));
  CHECK(pl_result_status(res) == PL_RUN_CERTIFIED);
  OwnedString report;
  pl_result_report_json(res, &report.ptr);
  Json j = Json::parse(std::string(report.ptr));
  CHECK(j["verdict"] == "sat");
  CHECK(j["certification"]["certified"] == true);
  pl_result_free(res);
  pl_problem_free(p);
}
